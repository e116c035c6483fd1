#include "flagcert/certify.hpp"

#include <cmath>
#include <numeric>

namespace flagcert {

PsdResult psd_certify(const RationalMatrix& m) {
  if (!m.is_symmetric()) {
    throw FlagError(FlagError::Kind::NotSymmetric, "psd_certify: matrix is not symmetric");
  }
  const std::size_t n = m.rows();
  RationalMatrix schur = m;
  // multipliers(r, k): coefficient of original row r at elimination step k.
  RationalMatrix multipliers(n, n);
  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::size_t> order;
  std::vector<Rational> diagonal;

  auto negative_from_schur = [&](std::vector<Rational> y) -> NegativeDirection {
    // y lives on `remaining`; undo the eliminations so that z^T M z equals
    // y^T S y for the current Schur complement S.
    std::vector<Rational> z(n);
    for (std::size_t r : remaining) {
      z[r] = y[r];
    }
    for (std::size_t step = order.size(); step-- > 0;) {
      Rational acc = 0;
      for (std::size_t r : remaining) {
        acc += multipliers(r, step) * z[r];
      }
      for (std::size_t later = step + 1; later < order.size(); ++later) {
        acc += multipliers(order[later], step) * z[order[later]];
      }
      z[order[step]] = -acc;
    }
    NegativeDirection out{z, quadratic_value(m, z)};
    if (out.value >= 0) {
      throw FlagError(FlagError::Kind::NotPsd, "psd_certify: internal error, witness is not negative");
    }
    return out;
  };

  while (!remaining.empty()) {
    std::size_t best = remaining.front();
    for (std::size_t r : remaining) {
      if (schur(r, r) > schur(best, best)) {
        best = r;
      }
    }
    const Rational pivot = schur(best, best);
    if (pivot < 0) {
      std::vector<Rational> y(n);
      y[best] = 1;
      return negative_from_schur(std::move(y));
    }
    if (pivot == 0) {
      // Every remaining diagonal entry is zero: PSD iff the rest vanishes.
      for (std::size_t a : remaining) {
        for (std::size_t b : remaining) {
          if (schur(a, b) != 0) {
            std::vector<Rational> y(n);
            y[a] = 1;
            y[b] = schur(a, b) > 0 ? -1 : 1;
            return negative_from_schur(std::move(y));
          }
        }
      }
      for (std::size_t r : remaining) {
        order.push_back(r);
        diagonal.emplace_back(0);
      }
      remaining.clear();
      break;
    }
    const std::size_t step = order.size();
    order.push_back(best);
    diagonal.push_back(pivot);
    std::erase(remaining, best);
    for (std::size_t r : remaining) {
      multipliers(r, step) = schur(r, best) / pivot;
    }
    for (std::size_t r : remaining) {
      if (multipliers(r, step) == 0) {
        continue;
      }
      for (std::size_t c : remaining) {
        schur(r, c) -= multipliers(r, step) * schur(best, c);
      }
    }
  }

  PsdWitness w;
  w.permutation = order;
  w.diagonal = std::move(diagonal);
  w.lower = RationalMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      w.lower(i, k) = multipliers(order[i], k);
    }
  }
  return w;
}

RationalMatrix reassemble(const PsdWitness& w) {
  const std::size_t n = w.permutation.size();
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational acc = 0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) {
        acc += w.lower(i, k) * w.diagonal[k] * w.lower(j, k);
      }
      out(w.permutation[i], w.permutation[j]) = acc;
    }
  }
  return out;
}

Rational quadratic_value(const RationalMatrix& m, std::span<const Rational> z) {
  Rational acc = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (z[i] == 0) {
      continue;
    }
    Rational row = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row += m(i, j) * z[j];
    }
    acc += z[i] * row;
  }
  return acc;
}

std::vector<RationalMatrix> round_matrices(const SolverSolution& sol, long denominator) {
  if (denominator < 1) {
    throw FlagError(FlagError::Kind::Parse, "rounding denominator must be positive");
  }
  std::vector<RationalMatrix> out;
  for (const DoubleMatrix& a : sol.matrices) {
    RationalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = i; j < a.cols(); ++j) {
        const double sym = 0.5 * (a(i, j) + a(j, i));
        const mpz_class scaled(std::round(sym * static_cast<double>(denominator)));
        r(i, j) = make_rational(scaled, mpz_class(denominator));
        r(j, i) = r(i, j);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

BoundResult best_bound(std::span<const RationalMatrix> matrices, const DensityData& data) {
  if (matrices.size() != data.types.size()) {
    throw FlagError(FlagError::Kind::DimensionMismatch, "best_bound: " + std::to_string(matrices.size()) +
                                                            " matrices for " + std::to_string(data.types.size()) +
                                                            " types");
  }
  BoundResult out;
  out.margins = data.objective.coeffs;
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    const DensityData::PerType& per = data.types[i];
    const FlagVector v = quadratic_form_image(per.table, per.averaging, matrices[i], data.zero_basis);
    for (std::size_t k = 0; k < out.margins.size(); ++k) {
      out.margins[k] -= v.coeffs[k];
    }
  }
  out.bound = out.margins.empty() ? Rational(0) : out.margins.front();
  for (std::size_t k = 1; k < out.margins.size(); ++k) {
    if (out.margins[k] < out.bound) {
      out.bound = out.margins[k];
      out.tight_index = k;
    }
  }
  return out;
}

namespace {

VerifyReport reject(VerifyFailure failure) {
  VerifyReport report;
  report.accepted = false;
  report.failure = std::move(failure);
  return report;
}

VerifyFailure malformed(const std::string& message) {
  VerifyFailure f;
  f.kind = VerifyFailure::Kind::Malformed;
  f.message = message;
  return f;
}

}  // namespace

VerifyReport verify(const Certificate& cert) {
  if (cert.types.size() != cert.matrices.size()) {
    return reject(malformed("certificate lists " + std::to_string(cert.types.size()) + " types but " +
                            std::to_string(cert.matrices.size()) + " matrices"));
  }
  std::optional<DensityData> data;
  try {
    data = compute_density_data(cert.t, cert.s, cert.small_size, cert.types);
  } catch (const FlagError& e) {
    return reject(malformed(e.what()));
  }

  for (std::size_t i = 0; i < cert.matrices.size(); ++i) {
    const RationalMatrix& m = cert.matrices[i];
    const std::size_t dim = data->types[i].table.small_basis()->count();
    if (m.rows() != dim || m.cols() != dim) {
      VerifyFailure f = malformed("matrix " + std::to_string(i + 1) + " is " + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()) + " but its type has " + std::to_string(dim) + " flags");
      f.matrix_index = i;
      return reject(std::move(f));
    }
    if (!m.is_symmetric()) {
      VerifyFailure f = malformed("matrix " + std::to_string(i + 1) + " is not symmetric");
      f.matrix_index = i;
      return reject(std::move(f));
    }
    PsdResult psd = psd_certify(m);
    if (auto* neg = std::get_if<NegativeDirection>(&psd)) {
      VerifyFailure f;
      f.kind = VerifyFailure::Kind::NotPsd;
      f.matrix_index = i;
      f.message = "matrix " + std::to_string(i + 1) + " is not positive semidefinite: z^T M z = " +
                  to_fraction_string(neg->value);
      f.witness = std::move(*neg);
      return reject(std::move(f));
    }
  }

  const BoundResult bound = best_bound(cert.matrices, *data);
  VerifyReport report;
  report.recomputed_bound = bound.bound;
  if (bound.bound >= cert.bound) {
    report.accepted = true;
    return report;
  }
  for (std::size_t k = 0; k < bound.margins.size(); ++k) {
    if (bound.margins[k] < cert.bound) {
      VerifyFailure f;
      f.kind = VerifyFailure::Kind::Violated;
      f.constraint_index = k;
      f.zero_flag = (*data->zero_basis)[k].graph().upper_triangle();
      f.residual = bound.margins[k] - cert.bound;
      f.message = "inequality fails at 0-flag " + std::to_string(k + 1) + " (" + f.zero_flag +
                  "): margin minus claimed bound is " + to_fraction_string(f.residual);
      report.failure = std::move(f);
      break;
    }
  }
  return report;
}

CertifyOutcome certify_solution(const SolverSolution& sol, const DensityData& data, std::span<const TypeGraph> types,
                                long denominator) {
  // Give up once eps would exceed 2^40 / denominator.
  constexpr long kMaxRepair = 1L << 40;
  CertifyOutcome out;
  out.certificate.t = data.t;
  out.certificate.s = data.s;
  out.certificate.small_size = data.small_size;
  out.certificate.types.assign(types.begin(), types.end());
  const std::vector<RationalMatrix> rounded = round_matrices(sol, denominator);
  for (std::size_t i = 0; i < rounded.size(); ++i) {
    long k = 0;
    RationalMatrix candidate = rounded[i];
    while (std::holds_alternative<NegativeDirection>(psd_certify(candidate))) {
      k = k == 0 ? 1 : 2 * k;
      if (k > kMaxRepair) {
        throw FlagError(FlagError::Kind::NotPsd,
                        "matrix " + std::to_string(i + 1) + " could not be repaired into a PSD matrix");
      }
      candidate = rounded[i];
      const Rational eps = make_rational(k, denominator);
      for (std::size_t d = 0; d < candidate.rows(); ++d) {
        candidate(d, d) += eps;
      }
    }
    out.certificate.matrices.push_back(std::move(candidate));
    out.repairs.push_back(k);
  }
  out.certificate.bound = best_bound(out.certificate.matrices, data).bound;
  return out;
}

}  // namespace flagcert
