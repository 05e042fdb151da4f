#include "qcorr/families.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/random.hpp"
#include "qcorr/state_ops.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {
namespace {

DensityMatrix pure(const Vector& psi, const SubsystemLayout& layout) {
  const Vector v = psi / psi.norm();
  return DensityMatrix::validate(v * v.adjoint(), layout);
}

DensityMatrix make(const family::Bell& b) {
  Vector psi = Vector::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  switch (b.which) {
    case family::BellKind::PhiPlus: psi[0] = r; psi[3] = r; break;
    case family::BellKind::PhiMinus: psi[0] = r; psi[3] = -r; break;
    case family::BellKind::PsiPlus: psi[1] = r; psi[2] = r; break;
    case family::BellKind::PsiMinus: psi[1] = r; psi[2] = -r; break;
  }
  return pure(psi, SubsystemLayout::qubits(2));
}

DensityMatrix make(const family::Werner& w) {
  if (!(w.p >= 0.0 && w.p <= 1.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "Werner p must lie in [0, 1]");
  }
  const Matrix bell = make(family::Bell{}).matrix();
  return DensityMatrix::validate(w.p * bell + (1.0 - w.p) * Matrix::Identity(4, 4) / 4.0,
                                 SubsystemLayout::qubits(2));
}

DensityMatrix make(const family::Ghz& g) {
  if (g.qubits < 2 || g.qubits > 6) throw Error(ErrorCode::ParameterOutOfRange, "GHZ needs 2..6 qubits");
  const int d = 1 << g.qubits;
  Vector psi = Vector::Zero(d);
  psi[0] = psi[d - 1] = 1.0;
  return pure(psi, SubsystemLayout::qubits(g.qubits));
}

DensityMatrix make(const family::WState& w) {
  if (w.qubits < 2 || w.qubits > 6) throw Error(ErrorCode::ParameterOutOfRange, "W state needs 2..6 qubits");
  Vector psi = Vector::Zero(1 << w.qubits);
  for (int k = 0; k < w.qubits; ++k) psi[1 << k] = 1.0;
  return pure(psi, SubsystemLayout::qubits(w.qubits));
}

DensityMatrix make(const family::ClassicalClassical& c) {
  const std::size_t rows = c.table.size();
  const std::size_t cols = rows ? c.table[0].size() : 0;
  if (rows < 2 || cols < 2) throw Error(ErrorCode::ParameterOutOfRange, "probability table must be at least 2x2");
  const SubsystemLayout layout({static_cast<int>(rows), static_cast<int>(cols)});
  Matrix rho = Matrix::Zero(layout.total_dim(), layout.total_dim());
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (c.table[i].size() != cols) throw Error(ErrorCode::ParameterOutOfRange, "ragged probability table");
    for (std::size_t j = 0; j < cols; ++j) {
      const double p = c.table[i][j];
      if (!(p >= 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "negative probability");
      rho(i * cols + j, i * cols + j) = p;
      total += p;
    }
  }
  if (std::abs(total - 1.0) > tol::trace) throw Error(ErrorCode::ParameterOutOfRange, "probabilities must sum to 1");
  return DensityMatrix::validate(rho, layout);
}

DensityMatrix make(const family::ClassicalQuantum& c) {
  const std::size_t k = c.probs.size();
  if (k < 2 || c.conditionals.size() != k) {
    throw Error(ErrorCode::ParameterOutOfRange, "need one conditional state per probability (at least 2)");
  }
  const SubsystemLayout& rest = c.conditionals[0].layout();
  Matrix rho = Matrix::Zero(static_cast<int>(k) * rest.total_dim(), static_cast<int>(k) * rest.total_dim());
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (c.conditionals[i].layout() != rest) throw Error(ErrorCode::ParameterOutOfRange, "conditional layouts differ");
    if (!(c.probs[i] >= 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "negative probability");
    Matrix flag = Matrix::Zero(k, k);
    flag(i, i) = 1.0;
    rho += c.probs[i] * kron(flag, c.conditionals[i].matrix());
    total += c.probs[i];
  }
  if (std::abs(total - 1.0) > tol::trace) throw Error(ErrorCode::ParameterOutOfRange, "probabilities must sum to 1");
  return DensityMatrix::validate(rho, SubsystemLayout({static_cast<int>(k)}).concat(rest));
}

DensityMatrix make(const family::Product& p) {
  if (p.factors.empty()) throw Error(ErrorCode::ParameterOutOfRange, "product needs at least one factor");
  DensityMatrix out = p.factors[0];
  for (std::size_t n = 1; n < p.factors.size(); ++n) out = tensor(out, p.factors[n]);
  return out;
}

DensityMatrix make(const family::RandomMixed& r) {
  const SubsystemLayout layout(r.dims);
  if (r.rank < 1 || r.rank > layout.total_dim()) {
    throw Error(ErrorCode::ParameterOutOfRange, "rank must lie in [1, total dimension]");
  }
  Rng rng(r.seed);
  return random_state(layout, r.rank, rng);
}

// --- parsing ---------------------------------------------------------------

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) {
    throw Error(ErrorCode::ParseError, "expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

long long parse_int(std::string_view s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) {
    throw Error(ErrorCode::ParseError, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view s) {
  std::vector<double> out;
  for (auto part : split(s, ',')) out.push_back(parse_double(part));
  return out;
}

std::vector<DensityMatrix> parse_bloch_list(std::string_view s) {
  std::vector<DensityMatrix> out;
  for (auto part : split(s, ';')) {
    const auto r = parse_list(part);
    if (r.size() != 3) throw Error(ErrorCode::ParseError, "Bloch vector needs three components");
    out.push_back(bloch_state(r[0], r[1], r[2]));
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

}  // namespace

DensityMatrix bloch_state(double x, double y, double z) {
  if (x * x + y * y + z * z > 1.0 + 1e-12) throw Error(ErrorCode::ParameterOutOfRange, "Bloch vector longer than 1");
  Matrix m(2, 2);
  m << cplx(1.0 + z, 0.0), cplx(x, -y), cplx(x, y), cplx(1.0 - z, 0.0);
  return DensityMatrix::validate(m * 0.5, SubsystemLayout({2}));
}

DensityMatrix instantiate(const StateFamily& family) {
  return std::visit([](const auto& f) { return make(f); }, family);
}

StateFamily parse_family(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::ParseError, "family spec needs 'name:params'");
  const auto name = spec.substr(0, colon);
  const auto args = spec.substr(colon + 1);

  if (name == "bell") {
    if (args == "phi+") return family::Bell{family::BellKind::PhiPlus};
    if (args == "phi-") return family::Bell{family::BellKind::PhiMinus};
    if (args == "psi+") return family::Bell{family::BellKind::PsiPlus};
    if (args == "psi-") return family::Bell{family::BellKind::PsiMinus};
    throw Error(ErrorCode::ParseError, "unknown Bell state '" + std::string(args) + "'");
  }
  if (name == "werner") return family::Werner{parse_double(args)};
  if (name == "ghz") return family::Ghz{static_cast<int>(parse_int(args))};
  if (name == "w") return family::WState{static_cast<int>(parse_int(args))};
  if (name == "cc") {
    const auto parts = split(args, ':');
    if (parts.size() != 2) throw Error(ErrorCode::ParseError, "cc needs <rows>x<cols>:<probabilities>");
    const auto shape = split(parts[0], 'x');
    if (shape.size() != 2) throw Error(ErrorCode::ParseError, "cc shape must be <rows>x<cols>");
    const auto rows = parse_int(shape[0]);
    const auto cols = parse_int(shape[1]);
    const auto flat = parse_list(parts[1]);
    if (rows < 1 || cols < 1 || static_cast<long long>(flat.size()) != rows * cols) {
      throw Error(ErrorCode::ParseError, "cc table size does not match its shape");
    }
    family::ClassicalClassical c;
    for (long long i = 0; i < rows; ++i) c.table.emplace_back(flat.begin() + i * cols, flat.begin() + (i + 1) * cols);
    return c;
  }
  if (name == "cq") {
    const auto parts = split(args, ':');
    if (parts.size() != 2) throw Error(ErrorCode::ParseError, "cq needs <probabilities>:<Bloch vectors>");
    return family::ClassicalQuantum{parse_list(parts[0]), parse_bloch_list(parts[1])};
  }
  if (name == "product") return family::Product{parse_bloch_list(args)};
  if (name == "random") {
    const auto parts = split(args, ':');
    if (parts.size() != 3) throw Error(ErrorCode::ParseError, "random needs <dims>:<rank>:<seed>");
    family::RandomMixed r{{}, static_cast<int>(parse_int(parts[1])), static_cast<std::uint64_t>(parse_int(parts[2]))};
    for (auto d : split(parts[0], 'x')) r.dims.push_back(static_cast<int>(parse_int(d)));
    return r;
  }
  throw Error(ErrorCode::ParseError, "unknown family '" + std::string(name) + "'");
}

std::string family_name(const StateFamily& family) {
  struct Visitor {
    std::string operator()(const family::Bell& b) const {
      static constexpr const char* names[] = {"phi+", "phi-", "psi+", "psi-"};
      return "bell:" + std::string(names[static_cast<int>(b.which)]);
    }
    std::string operator()(const family::Werner& w) const { return "werner:" + fmt(w.p); }
    std::string operator()(const family::Ghz& g) const { return "ghz:" + std::to_string(g.qubits); }
    std::string operator()(const family::WState& w) const { return "w:" + std::to_string(w.qubits); }
    std::string operator()(const family::ClassicalClassical& c) const {
      return "cc:" + std::to_string(c.table.size()) + "x" + std::to_string(c.table.empty() ? 0 : c.table[0].size());
    }
    std::string operator()(const family::ClassicalQuantum& c) const { return "cq:" + std::to_string(c.probs.size()); }
    std::string operator()(const family::Product& p) const { return "product:" + std::to_string(p.factors.size()); }
    std::string operator()(const family::RandomMixed& r) const {
      return "random:" + SubsystemLayout(r.dims).to_string() + ":" + std::to_string(r.rank) + ":" +
             std::to_string(r.seed);
    }
  };
  return std::visit(Visitor{}, family);
}

}  // namespace qcorr
