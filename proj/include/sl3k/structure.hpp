#pragma once

// Invariant subspaces of V_{lambda,delta} spanned by sets of K-types, detected
// from exact vanishing of the coefficients of pi(Z_n), and the composition
// series reports built on top of them.

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sl3k/action.hpp"
#include "sl3k/series.hpp"

namespace sl3k {

/// A span of basis vectors v_{l,m1,m2}. The predicate must not depend on m2,
/// so that the span is K-stable; node (l, m1) belongs to the span when
/// contains({l, m1, 0}) holds.
struct SubspaceSpec {
  std::string name;
  std::string description;
  std::function<bool(const BasisLabel&)> contains;

  bool contains_node(int l, int m1) const { return contains({l, m1, 0}); }
  SubspaceSpec complement() const;

  static SubspaceSpec whole(std::string name = "V");
  static SubspaceSpec m1_below(int k);
  static SubspaceSpec m1_at_least(int k);
  static SubspaceSpec m1_equals(int m);
  static SubspaceSpec m1_equals_l_odd(int m);
};

/// One summand pi(Z_n) term (j, k) of a boundary transition and why it is zero.
struct CertificateTerm {
  int j = 0;
  int k = 0;
  std::string reason;  // "Lambda^(k)=0", "q(k,j,l,m1)=0", "q(n,j,l,m2)=0"
};

/// A transition from a label inside the span to a label outside it whose exact
/// coefficient is zero, with the vanishing factor of every contributing term.
/// When some terms are nonzero and their sum is zero the reason list ends with
/// "cancellation".
struct BoundaryCertificate {
  BasisLabel from;
  Generator generator = Generator::Z0;
  BasisLabel to;
  std::vector<CertificateTerm> terms;
  bool cancellation = false;
};

struct Leak {
  BasisLabel from;
  Generator generator = Generator::Z0;
  BasisLabel to;
  ExactComplex value;
};

struct InvarianceResult {
  std::string name;
  std::string description;
  ExactLambda lambda;
  Delta delta{0, 0, 0};
  int lmax = 0;
  bool invariant = false;
  bool connected = false;  // strong connectivity of the (l, m1) graph of the span
  int labels_checked = 0;  // labels with l <= lmax - 2
  int nodes = 0;
  std::vector<Leak> leaks;
  std::vector<BoundaryCertificate> certificates;
  /// Largest coefficient outside the span when the same vectors are pushed
  /// through the Wigner expansion and folded, evaluated in floating point.
  double numeric_max_leak = 0.0;

  /// Count of certificate terms per reason.
  std::map<std::string, int> certificate_summary() const;
  nlohmann::json to_json(std::size_t max_certificates = 25) const;
};

/// Checks that pi(Z_n) for all five n and pi(Y_i) for all three i map every
/// label of the span with l <= lmax - 2 into the span, with coefficients
/// evaluated exactly at lambda. Labels with l > lmax - 2 contribute only to the
/// reachability graph. Throws std::invalid_argument if lmax < 2.
/// threads = 0 uses the hardware concurrency.
InvarianceResult verify_invariant(const ExactLambda& lambda, const Delta& delta,
                                  const SubspaceSpec& spec, int lmax, int threads = 0);

/// Strong connectivity of the nodes of `outer` outside `inner` under nonzero
/// exact transitions that stay among those nodes (l <= lmax).
bool reachability_connected(const ExactLambda& lambda, const Delta& delta,
                            const SubspaceSpec& outer, const SubspaceSpec& inner, int lmax,
                            int threads = 0);

/// Number of nodes (l, m1) of the span at a given l.
int span_multiplicity(const Delta& delta, const SubspaceSpec& spec, int l);

/// Invariance of S in V_{lambda,delta}, of the complement in V_{-lambda,delta},
/// and additivity of the multiplicity tables.
struct DualityCheck {
  InvarianceResult sub;
  InvarianceResult dual_complement;
  bool additive = false;
  bool consistent() const { return sub.invariant == dual_complement.invariant && additive; }
};
DualityCheck duality_check(const ExactLambda& lambda, const Delta& delta, const SubspaceSpec& spec,
                           int lmax, int threads = 0);

struct ChainLink {
  std::string name;
  std::string description;
  /// Invariance of this member; absent for the whole space.
  std::optional<InvarianceResult> invariance;
  /// Connectivity of the factor (this member modulo the previous one).
  bool factor_connected = false;
  std::string factor_label;
  /// A subspace of the dual representation checked alongside this link.
  std::optional<InvarianceResult> dual;
};

struct StructureReport {
  std::string preset;
  ExactLambda lambda;
  Delta delta{0, 0, 0};
  int lmax = 0;
  std::vector<ChainLink> chain;  // increasing, {0} omitted
  std::optional<int> length;     // composition length supplied by the preset
  std::vector<std::string> multiplicity_columns;
  std::map<int, std::vector<int>> multiplicities;
  std::vector<std::string> table_header;
  std::vector<std::vector<std::string>> table_rows;
  nlohmann::json extra = nlohmann::json::object();
  std::vector<std::string> notes;
  bool ok = false;

  nlohmann::json to_json() const;
  /// One line per chain member, then the table if present.
  std::string to_text() const;
};

std::string format_lambda(const ExactLambda& lambda);

/// lambda = (-(k-1)/2, (k-1)/2, 0), delta = 0: V_B (m1 < k) and the dual V_A
/// (m1 >= k). Throws std::invalid_argument unless k is even, k >= 2 and
/// lmax >= k + 4.
StructureReport even_k_report(int k, int lmax = 12, int threads = 0);

/// lambda = (s - 1/2, s + 1/2, -2s), delta = 0, the span of m1 = 0.
StructureReport degenerate_series_report(const ExactComplex& s, int lmax = 12, int threads = 0);

/// lambda = (-1, 1, 0), delta = (1, 0, 1): {0} < V(1)_odd < V(1) < V.
/// Throws std::invalid_argument if lmax < 6.
StructureReport k3_chain_report(int lmax = 12, int threads = 0);

/// lambda = (11, -11, 0), delta = (1, 0, 1): the span of m1 >= 23.
/// Throws std::invalid_argument if lmax < 27.
StructureReport k23_subspace_report(int lmax = 31, int threads = 0);

/// Closed forms m_A, m_B for the even-k constituents.
int even_k_multiplicity_A(int k, int l);
int even_k_multiplicity_B(int k, int l);

}  // namespace sl3k
