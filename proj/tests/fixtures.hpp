#pragma once

#include <string>
#include <vector>

#include "flagcert/certify.hpp"

namespace fixtures {

using flagcert::Flag;
using flagcert::Graph;
using flagcert::Rational;

struct DensityCase {
  std::string name;
  std::vector<Flag> petals;
  Flag large;
  Rational expected;
};

inline Flag rooted(int n, std::initializer_list<std::pair<int, int>> edges, int s) {
  return Flag::with_leading_roots(Graph(n, edges), s);
}

// Small flags from the worked example; vertices a, b, c, d are 0, 1, 2, 3 and
// roots come first.
inline std::vector<DensityCase> example_one() {
  using flagcert::make_rational;
  const Flag rho = rooted(2, {{0, 1}}, 0);
  const Flag rho_bar = rooted(2, {}, 0);
  const Flag k3 = rooted(3, {{0, 1}, {1, 2}, {0, 2}}, 0);
  const Flag g1 = rooted(4, {{0, 1}, {1, 3}, {3, 2}, {2, 0}}, 0);
  const Flag g2 = rooted(4, {{0, 1}, {1, 3}, {3, 2}, {2, 0}, {0, 3}}, 0);

  const Flag e = rooted(2, {{0, 1}}, 1);
  const Flag e_bar = rooted(2, {}, 1);
  const Flag k3_1 = rooted(3, {{0, 1}, {1, 2}, {0, 2}}, 1);
  const Flag p3_end = rooted(3, {{0, 1}, {1, 2}}, 1);
  const Flag p3_mid = rooted(3, {{1, 0}, {0, 2}}, 1);
  const Flag h1 = rooted(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 1);
  const Flag h2 = rooted(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}, 1);
  const Flag h3 = rooted(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 3}}, 1);

  const Flag h4 = rooted(3, {{1, 0}, {0, 2}}, 2);
  const Flag h5 = rooted(3, {{0, 1}, {1, 2}}, 2);
  const Flag h6 = rooted(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 2);
  const Flag h7 = rooted(3, {{0, 2}, {2, 1}}, 2);
  const Flag h8 = rooted(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}}, 2);

  auto r = [](long p, long q) { return make_rational(p, q); };
  return {
      {"p(rho;K3)", {rho}, k3, r(1, 1)},
      {"p(rho;G1)", {rho}, g1, r(2, 3)},
      {"p(rho;G2)", {rho}, g2, r(5, 6)},
      {"p(rho_bar;K3)", {rho_bar}, k3, r(0, 1)},
      {"p(rho_bar;G2)", {rho_bar}, g2, r(1, 6)},
      {"p(K3;G1)", {k3}, g1, r(0, 1)},
      {"p(K3;G2)", {k3}, g2, r(1, 2)},
      {"p(rho,rho;G1)", {rho, rho}, g1, r(4, 6)},
      {"p(rho_bar,rho_bar;G1)", {rho_bar, rho_bar}, g1, r(2, 6)},
      {"p(rho,rho_bar;G1)", {rho, rho_bar}, g1, r(0, 1)},
      {"p(rho,rho;G2)", {rho, rho}, g2, r(4, 6)},
      {"p(rho,rho_bar;G2)", {rho, rho_bar}, g2, r(1, 6)},
      {"p(rho_bar,rho;G2)", {rho_bar, rho}, g2, r(1, 6)},
      {"p(rho_bar,rho_bar;G2)", {rho_bar, rho_bar}, g2, r(0, 1)},
      {"p(e;K3^1)", {e}, k3_1, r(1, 1)},
      {"p(e;P3^1c)", {e}, p3_mid, r(1, 1)},
      {"p(e;P3^1b)", {e}, p3_end, r(1, 2)},
      {"p(e;H1)", {e}, h1, r(2, 3)},
      {"p(e;H3)", {e}, h3, r(2, 3)},
      {"p(e;H2)", {e}, h2, r(1, 1)},
      {"p(K3^1;H1)", {k3_1}, h1, r(0, 1)},
      {"p(K3^1;H2)", {k3_1}, h2, r(2, 3)},
      {"p(K3^1;H3)", {k3_1}, h3, r(1, 3)},
      {"p(e_bar,K3^1;H3)", {e_bar, k3_1}, h3, r(1, 3)},
      {"p(e,e_bar;H1)", {e, e_bar}, h1, r(2, 6)},
      {"p(e_bar,e;H1)", {e_bar, e}, h1, r(2, 6)},
      {"p(H4;H6)", {h4}, h6, r(1, 2)},
      {"p(H4,H4;H6)", {h4, h4}, h6, r(0, 1)},
      {"p(H4,H5;H6)", {h4, h5}, h6, r(1, 2)},
      {"p(H7;H8)", {h7}, h8, r(1, 1)},
  };
}

/// The optimal certificate for triangles: M = (3/4) [[1, -1], [-1, 1]] on the
/// two 2-vertex flags of the one-vertex type.
inline flagcert::Certificate goodman_certificate() {
  flagcert::Certificate cert;
  cert.t = 3;
  cert.s = 1;
  cert.small_size = 2;
  cert.types = flagcert::enumerate_types(1);
  flagcert::RationalMatrix m(2, 2);
  const Rational q = flagcert::make_rational(3, 4);
  m(0, 0) = q;
  m(1, 1) = q;
  m(0, 1) = -q;
  m(1, 0) = -q;
  cert.matrices = {m};
  cert.bound = flagcert::make_rational(1, 4);
  return cert;
}

}  // namespace fixtures
