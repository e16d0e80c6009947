#pragma once

// Principal series V_{nu,eps} of SL(2,R) in the K-type basis v_l (l = eps mod 2):
//   raise = pi([[1,-i],[-i,-1]]):  v_l -> (2nu+1+l) v_{l+2}
//   lower = pi([[1, i],[ i,-1]]):  v_l -> (2nu+1-l) v_{l-2}
//   weight = pi([[0,-1],[1,0]]):   v_l -> i l v_l

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sl3k/scalars.hpp"

namespace sl3k {

struct SL2Params {
  std::complex<double> nu;
  std::optional<Rational> exact_nu;  // set when nu is known exactly
  int epsilon = 0;

  static SL2Params exact(const Rational& nu, int epsilon);
  static SL2Params numeric(std::complex<double> nu, int epsilon);
};

/// Finite combination of the v_l; keys are weights l.
using SL2Vector = std::map<int, std::complex<double>>;

enum class SL2Generator { E, H, F };

SL2Vector sl2_raise(const SL2Params& p, const SL2Vector& v);
SL2Vector sl2_lower(const SL2Params& p, const SL2Vector& v);
SL2Vector sl2_weight(const SL2Params& p, const SL2Vector& v);

/// Action of E = [[0,1],[0,0]], H = [[1,0],[0,-1]], F = [[0,0],[1,0]].
SL2Vector sl2_standard_basis_action(const SL2Params& p, SL2Generator g, const SL2Vector& v);

/// Exact ladder coefficients 2nu+1+l and 2nu+1-l. Require exact_nu.
Rational sl2_raise_coefficient(const SL2Params& p, int l);
Rational sl2_lower_coefficient(const SL2Params& p, int l);

/// Maximal run of consecutive weights (step 2) not separated by a vanishing
/// ladder coefficient. Unbounded ends are empty optionals.
struct SL2Segment {
  std::optional<int> lo;
  std::optional<int> hi;
  bool contains(int l) const;
  std::string to_string() const;
};

struct SL2CompositionReport {
  bool irreducible = true;
  bool exact = false;  // false when nu is not an exact rational
  std::vector<SL2Segment> segments;  // ordered by weight
  std::vector<int> submodule;        // indices of segments with no outgoing ladder step
  std::vector<int> quotient;         // the remaining segments
  std::string summary;

  bool in_submodule(int l) const;
  nlohmann::json to_json() const;
};

/// Splits the weight ladder at exactly vanishing raise/lower coefficients.
/// Segments that no nonzero ladder step leaves form the submodule.
SL2CompositionReport sl2_composition_report(const SL2Params& p);

/// Exact closure check of the reported submodule under raise, lower and
/// weight for all weights |l| <= window.
bool sl2_verify_submodule(const SL2Params& p, const SL2CompositionReport& report, int window);

}  // namespace sl3k
