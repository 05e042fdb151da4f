#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcorr/density_matrix.hpp"

namespace qcorr {

namespace family {

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

struct Bell {
  BellKind which = BellKind::PhiPlus;
};
/// p |Phi+><Phi+| + (1 - p) 1/4.
struct Werner {
  double p;
};
struct Ghz {
  int qubits;
};
struct WState {
  int qubits;
};
/// sum_ij table[i][j] |ij><ij|; layout [rows, cols].
struct ClassicalClassical {
  std::vector<std::vector<double>> table;
};
/// sum_i probs[i] |i><i| (x) conditionals[i]; subsystem 0 is classical.
struct ClassicalQuantum {
  std::vector<double> probs;
  std::vector<DensityMatrix> conditionals;
};
struct Product {
  std::vector<DensityMatrix> factors;
};
struct RandomMixed {
  std::vector<int> dims;
  int rank;
  std::uint64_t seed;
};

}  // namespace family

using StateFamily = std::variant<family::Bell, family::Werner, family::Ghz, family::WState,
                                 family::ClassicalClassical, family::ClassicalQuantum, family::Product,
                                 family::RandomMixed>;

/// Throws ParameterOutOfRange for parameters outside their documented range.
DensityMatrix instantiate(const StateFamily& family);

/// Parses the command-line vocabulary:
///   bell:phi+|phi-|psi+|psi-     werner:<p>      ghz:<n>      w:<n>
///   cc:<rows>x<cols>:<p00>,<p01>,...
///   cq:<p0>,<p1>,...:<x>,<y>,<z>;<x>,<y>,<z>;...   (qubit conditionals as Bloch vectors)
///   product:<x>,<y>,<z>;<x>,<y>,<z>;...           (qubit factors as Bloch vectors)
///   random:<d1>x<d2>x...:<rank>:<seed>
/// Throws ParseError or ParameterOutOfRange.
StateFamily parse_family(std::string_view spec);

/// Family name and parameter text as used in sweep output.
std::string family_name(const StateFamily& family);

/// Qubit state (1 + r.sigma)/2; throws ParameterOutOfRange for |r| > 1.
DensityMatrix bloch_state(double x, double y, double z);

}  // namespace qcorr
