#include "qcorr/separable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qcorr/error.hpp"
#include "qcorr/lbfgs.hpp"
#include "qcorr/random.hpp"
#include "qcorr/state_ops.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {
namespace {

constexpr double kPadWeight = 1e-12;
constexpr double kEigenFloor = 1e-280;

struct PureTerm {
  double weight;
  std::vector<Vector> vectors;
};

// Local factor sin^2(a) P(v) + cos^2(a) 1/d.
Matrix local_factor(double a, const Vector& v) {
  const auto d = v.size();
  const double s = std::sin(a) * std::sin(a);
  const double norm = v.squaredNorm();
  Matrix out = Matrix::Identity(d, d) * ((1.0 - s) / static_cast<double>(d));
  if (norm > 0.0) out += (s / norm) * (v * v.adjoint());
  return out;
}

Vector read_vector(std::span<const double> p, int d) {
  Vector v(d);
  for (int j = 0; j < d; ++j) v[j] = cplx(p[2 * j], p[2 * j + 1]);
  return v;
}

}  // namespace

ProductDecomposition::ProductDecomposition(SubsystemLayout layout, std::vector<ProductTerm> terms)
    : layout_(std::move(layout)), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.factors.size() != layout_.size()) {
      throw Error(ErrorCode::DimensionMismatch, "product term has wrong number of factors");
    }
    for (std::size_t n = 0; n < t.factors.size(); ++n) {
      if (t.factors[n].rows() != layout_.dim(n) || t.factors[n].cols() != layout_.dim(n)) {
        throw Error(ErrorCode::DimensionMismatch, "product factor does not match layout");
      }
    }
  }
}

Matrix ProductDecomposition::assemble() const {
  const int d = layout_.total_dim();
  Matrix out = Matrix::Zero(d, d);
  for (const auto& t : terms_) out += t.weight * kron(t.factors);
  return out;
}

double ProductDecomposition::certificate_error() const {
  double err = 0.0;
  double total = 0.0;
  for (const auto& t : terms_) {
    err = std::max(err, -t.weight);
    total += t.weight;
    for (const auto& f : t.factors) {
      err = std::max(err, hermiticity_deviation(f));
      err = std::max(err, std::abs(f.trace().real() - 1.0));
      err = std::max(err, -hermitian_eigenvalues(hermitian_part(f)).minCoeff());
    }
  }
  return std::max(err, std::abs(total - 1.0));
}

ProductDecomposition classical_decomposition(const DensityMatrix& rho, const LocalBasisSet& basis) {
  const SubsystemLayout& layout = rho.layout();
  basis.check_against(layout);
  if (basis.measured().size() != layout.size()) {
    throw Error(ErrorCode::BasisDimensionMismatch, "classical decomposition needs a basis for every subsystem");
  }
  const Matrix u = basis.full_unitary(layout);
  const Matrix ru = rho.matrix() * u;
  std::vector<ProductTerm> terms;
  for (int k = 0; k < layout.total_dim(); ++k) {
    const double p = u.col(k).dot(ru.col(k)).real();
    if (p <= 0.0) continue;
    ProductTerm t{p, {}};
    int rem = k;
    std::vector<int> digits(layout.size());
    for (std::size_t n = layout.size(); n-- > 0;) {
      digits[n] = rem % layout.dim(n);
      rem /= layout.dim(n);
    }
    for (std::size_t n = 0; n < layout.size(); ++n) {
      const Vector v = basis.basis_for(n).vector(digits[n]);
      t.factors.push_back(v * v.adjoint());
    }
    terms.push_back(std::move(t));
  }
  double total = 0.0;
  for (const auto& t : terms) total += t.weight;
  for (auto& t : terms) t.weight /= total;
  return ProductDecomposition(layout, std::move(terms));
}

ProductDecomposition marginal_decomposition(const DensityMatrix& rho) {
  ProductTerm t{1.0, {}};
  for (const auto& m : marginals(rho)) t.factors.push_back(m.matrix());
  return ProductDecomposition(rho.layout(), {std::move(t)});
}

SeparableAnsatz::SeparableAnsatz(SubsystemLayout layout, int terms) : layout_(std::move(layout)), terms_(terms) {
  if (terms_ < 1) throw Error(ErrorCode::ParameterOutOfRange, "ansatz needs at least one term");
  std::size_t off = 1;
  for (std::size_t n = 0; n < layout_.size(); ++n) {
    offsets_.push_back(off);
    off += 1 + 2 * static_cast<std::size_t>(layout_.dim(n));
    splits_.push_back(layout_.split({n}));
  }
  per_term_ = off;
}

ProductDecomposition SeparableAnsatz::decode(std::span<const double> params) const {
  if (params.size() != parameter_count()) throw Error(ErrorCode::DimensionMismatch, "ansatz parameter count");
  std::vector<double> logits(terms_);
  for (int i = 0; i < terms_; ++i) logits[i] = params[i * per_term_];
  const double top = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (auto& l : logits) z += (l = std::exp(l - top));

  std::vector<ProductTerm> out;
  for (int i = 0; i < terms_; ++i) {
    const auto term = params.subspan(i * per_term_, per_term_);
    ProductTerm t{logits[i] / z, {}};
    for (std::size_t n = 0; n < layout_.size(); ++n) {
      const int d = layout_.dim(n);
      const auto f = term.subspan(offsets_[n], 1 + 2 * d);
      t.factors.push_back(local_factor(f[0], read_vector(f.subspan(1), d)));
    }
    out.push_back(std::move(t));
  }
  return ProductDecomposition(layout_, std::move(out));
}

std::vector<double> SeparableAnsatz::encode(const ProductDecomposition& decomposition) const {
  std::vector<PureTerm> pure;
  for (const auto& t : decomposition.terms()) {
    std::vector<PureTerm> partial{{t.weight, {}}};
    for (const auto& f : t.factors) {
      const Spectrum s = hermitian_spectrum(hermitian_part(f));
      std::vector<PureTerm> next;
      for (const auto& p : partial) {
        for (Eigen::Index k = 0; k < s.values.size(); ++k) {
          if (s.values[k] <= 1e-14) continue;
          PureTerm q = p;
          q.weight *= s.values[k];
          q.vectors.push_back(s.vectors.col(k));
          next.push_back(std::move(q));
        }
      }
      partial = std::move(next);
    }
    pure.insert(pure.end(), partial.begin(), partial.end());
  }
  std::stable_sort(pure.begin(), pure.end(), [](const auto& a, const auto& b) { return a.weight > b.weight; });
  if (pure.size() > static_cast<std::size_t>(terms_)) pure.resize(terms_);

  std::vector<double> params(parameter_count(), 0.0);
  for (int i = 0; i < terms_; ++i) {
    auto term = std::span<double>(params).subspan(i * per_term_, per_term_);
    const bool used = i < static_cast<int>(pure.size()) && pure[i].weight > kPadWeight;
    term[0] = std::log(used ? pure[i].weight : kPadWeight);
    for (std::size_t n = 0; n < layout_.size(); ++n) {
      const int d = layout_.dim(n);
      auto f = term.subspan(offsets_[n], 1 + 2 * d);
      if (used) {
        f[0] = 0.5 * std::numbers::pi;
        for (int j = 0; j < d; ++j) {
          f[1 + 2 * j] = pure[i].vectors[n][j].real();
          f[2 + 2 * j] = pure[i].vectors[n][j].imag();
        }
      } else {
        f[0] = 0.0;
        f[1] = 1.0;
      }
    }
  }
  return params;
}

double SeparableAnsatz::objective(const DensityMatrix& rho, double rho_entropy_nats, std::span<const double> params,
                                  std::span<double> grad) const {
  const int dim = layout_.total_dim();
  const std::size_t parties = layout_.size();

  std::vector<double> weights(terms_);
  for (int i = 0; i < terms_; ++i) weights[i] = params[i * per_term_];
  const double top = *std::max_element(weights.begin(), weights.end());
  double z = 0.0;
  for (auto& w : weights) z += (w = std::exp(w - top));
  for (auto& w : weights) w /= z;

  std::vector<std::vector<Matrix>> factors(terms_);
  std::vector<Matrix> products(terms_);
  Matrix sigma = Matrix::Zero(dim, dim);
  for (int i = 0; i < terms_; ++i) {
    const auto term = params.subspan(i * per_term_, per_term_);
    for (std::size_t n = 0; n < parties; ++n) {
      const int d = layout_.dim(n);
      const auto f = term.subspan(offsets_[n], 1 + 2 * d);
      factors[i].push_back(local_factor(f[0], read_vector(f.subspan(1), d)));
    }
    products[i] = kron(factors[i]);
    sigma += weights[i] * products[i];
  }

  const Spectrum s = hermitian_spectrum(hermitian_part(sigma));
  const Matrix rotated = s.vectors.adjoint() * rho.matrix() * s.vectors;
  RealVector logs(dim);
  double cross = 0.0;
  for (int j = 0; j < dim; ++j) {
    logs[j] = std::log(std::max(s.values[j], kEigenFloor));
    cross -= rotated(j, j).real() * logs[j];
  }
  const double value = (cross - rho_entropy_nats) / std::numbers::ln2;
  if (grad.empty()) return value;

  // Gradient of -tr(rho log sigma) with respect to sigma (Frechet derivative
  // of log through first divided differences).
  Matrix divided(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const double ma = std::max(s.values[a], kEigenFloor);
      const double mb = std::max(s.values[b], kEigenFloor);
      const double l = std::abs(ma - mb) > 1e-12 * std::max(ma, mb) ? (logs[a] - logs[b]) / (ma - mb) : 2.0 / (ma + mb);
      divided(a, b) = rotated(a, b) * l;
    }
  }
  const Matrix g = -(s.vectors * divided * s.vectors.adjoint()) / std::numbers::ln2;

  std::vector<double> dweight(terms_);
  double mean = 0.0;
  for (int i = 0; i < terms_; ++i) {
    dweight[i] = (g.cwiseProduct(products[i].transpose())).sum().real();
    mean += weights[i] * dweight[i];
  }
  for (int i = 0; i < terms_; ++i) {
    auto term_grad = grad.subspan(i * per_term_, per_term_);
    const auto term = params.subspan(i * per_term_, per_term_);
    term_grad[0] = weights[i] * (dweight[i] - mean);

    for (std::size_t n = 0; n < parties; ++n) {
      const int d = layout_.dim(n);
      const IndexSplit& split = splits_[n];
      std::vector<Matrix> others;
      for (std::size_t m = 0; m < parties; ++m) {
        if (m != n) others.push_back(factors[i][m]);
      }
      const Matrix other = kron(others);
      // h(a, b) = sum G((a,r),(b,r')) K(r', r), so that d f = tr(h d pi).
      Matrix h = Matrix::Zero(d, d);
      for (int x = 0; x < dim; ++x) {
        for (int y = 0; y < dim; ++y) h(split.part[x], split.part[y]) += g(x, y) * other(split.rest[y], split.rest[x]);
      }
      h = hermitian_part(h) * weights[i];

      const auto f = term.subspan(offsets_[n], 1 + 2 * d);
      auto fg = term_grad.subspan(offsets_[n], 1 + 2 * d);
      const Vector v = read_vector(f.subspan(1), d);
      const double norm = std::max(v.squaredNorm(), 1e-300);
      const double sn = std::sin(f[0]);
      const double s2 = sn * sn;
      const cplx vhv = v.dot(h * v);
      fg[0] = std::sin(2.0 * f[0]) * (vhv.real() / norm - h.trace().real() / d);
      const Vector u = (h * v - (vhv.real() / norm) * v) / norm;
      for (int j = 0; j < d; ++j) {
        fg[1 + 2 * j] = 2.0 * s2 * u[j].real();
        fg[2 + 2 * j] = 2.0 * s2 * u[j].imag();
      }
    }
  }
  return value;
}

SeparableOptimum minimize_over_separable(const DensityMatrix& rho, const OptimizerSettings& settings,
                                         std::span<const ProductDecomposition> seeds) {
  settings.check();
  const SubsystemLayout& layout = rho.layout();
  const int dim = layout.total_dim();
  const int terms = settings.separable_terms > 0 ? settings.separable_terms : dim * dim;
  const SeparableAnsatz ansatz(layout, terms);

  std::vector<ProductDecomposition> starts(seeds.begin(), seeds.end());
  LocalBasisSet eigenbasis;
  for (std::size_t n = 0; n < layout.size(); ++n) {
    eigenbasis.set(n, LocalBasis::from_unitary(hermitian_spectrum(partial_trace(rho, {n}).matrix()).vectors));
  }
  starts.push_back(classical_decomposition(rho, eigenbasis));
  starts.push_back(classical_decomposition(rho, LocalBasisSet::computational(layout, layout.all())));
  starts.push_back(marginal_decomposition(rho));

  const double rho_entropy_nats = entropy(rho) * std::numbers::ln2;
  std::vector<std::vector<double>> inits;
  for (const auto& s : starts) inits.push_back(ansatz.encode(s));
  Rng rng(settings.seed);
  while (inits.size() < static_cast<std::size_t>(std::max<int>(settings.restarts, static_cast<int>(starts.size())))) {
    std::vector<double> p(ansatz.parameter_count());
    for (auto& x : p) x = rng.normal();
    for (int i = 0; i < terms; ++i) p[i * (p.size() / terms)] *= 0.5;
    inits.push_back(std::move(p));
  }

  const GradientObjective f = [&](std::span<const double> x, std::span<double> g) {
    return ansatz.objective(rho, rho_entropy_nats, x, g);
  };
  std::vector<LbfgsResult> runs(inits.size());
  parallel_chunks(inits.size(), worker_count(settings.threads), [&](int, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      runs[i] = lbfgs(f, inits[i], LbfgsOptions{settings.separable_max_iter, 12, 1e-10, 1e-15});
    }
  });

  struct Candidate {
    ProductDecomposition decomposition;
    double value;
    bool converged;
  };
  std::vector<Candidate> candidates;
  long long evaluations = 0;
  for (const auto& s : starts) candidates.push_back({s, relative_entropy(rho, s.state()), false});
  for (const auto& r : runs) {
    evaluations += r.evaluations;
    auto d = ansatz.decode(r.x);
    const double v = relative_entropy(rho, d.state());
    candidates.push_back({std::move(d), v, r.converged});
  }

  double best = kInfinite;
  for (const auto& c : candidates) best = std::min(best, c.value);
  if (!std::isfinite(best)) throw Error(ErrorCode::OptimizerFailure, "no separable candidate has finite distance");
  std::size_t chosen = 0;
  while (candidates[chosen].value > best + settings.opt_tol) ++chosen;

  // A seed counts as converged when its own refinement could not improve it.
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (runs[i].converged && candidates[i].value - candidates[starts.size() + i].value <= settings.opt_tol) {
      candidates[i].converged = true;
    }
  }

  const DensityMatrix sigma = candidates[chosen].decomposition.state();
  // Basins are the refined runs; unrefined seeds are only starting points.
  double second = kInfinite;
  for (std::size_t i = starts.size(); i < candidates.size(); ++i) {
    if (i == chosen || candidates[i].value >= second) continue;
    if (trace_distance(candidates[i].decomposition.state(), sigma) > 1e-3) second = candidates[i].value;
  }

  OptimizerDiagnostics diag;
  diag.restarts = static_cast<int>(runs.size());
  diag.evaluations = evaluations;
  diag.best = candidates[chosen].value;
  diag.second_best = std::isfinite(second) ? second : diag.best;
  diag.gap = std::max(0.0, diag.second_best - diag.best);
  diag.converged = candidates[chosen].converged || diag.gap <= settings.opt_gap_tol;
  for (const auto& c : candidates) {
    if (c.converged && c.value <= best + settings.opt_gap_tol) diag.converged = true;
  }
  if (!diag.converged) {
    throw Error(ErrorCode::OptimizerFailure, "separable refinement did not converge; candidates disagree by " +
                                                 std::to_string(diag.gap) + " bits");
  }
  const double value = candidates[chosen].value;
  return SeparableOptimum{value, sigma, candidates[chosen].decomposition, value <= settings.opt_tol, diag};
}

}  // namespace qcorr
