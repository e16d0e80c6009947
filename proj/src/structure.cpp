#include "sl3k/structure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sl3k/clebsch.hpp"

namespace sl3k {

namespace {

// Terminal columns of a UTF-8 string: counts code points.
std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

using Node = std::pair<int, int>;  // (l, m1)

ExactComplex rational(long n, long d = 1) { return ExactComplex(RadicalScalar(Rational(n, d))); }

ExactLambda negate(const ExactLambda& lambda) { return {-lambda[0], -lambda[1], -lambda[2]}; }

nlohmann::json label_json(const BasisLabel& b) { return nlohmann::json::array({b.l, b.m1, b.m2}); }

struct TargetInfo {
  ExactComplex value;
  std::vector<CertificateTerm> zero_terms;
  int nonzero_terms = 0;
};

// pi(Z_n) v_{l,m1,m2} term by term, with every coefficient evaluated exactly.
std::map<BasisLabel, TargetInfo> z_image(const ExactLambda& lambda, const Delta& delta, int n,
                                         const BasisLabel& label) {
  const auto [l, m1, m2] = label;
  std::map<BasisLabel, TargetInfo> out;
  for (int j = -2; j <= 2; ++j) {
    const int lt = l + j;
    if (lt < 0 || std::abs(m2 + n) > lt) continue;
    for (int k = -2; k <= 2; k += 2) {
      int target = m1 + k;
      if (std::abs(target) > lt) continue;
      int sign = 1;
      if (target < 0) {
        target = -target;
        sign = basis_sign(delta, lt);
      }
      if (target == 0 && basis_sign(delta, lt) == -1) continue;
      TargetInfo& info = out[{lt, target, m2 + n}];
      const RadicalScalar& qn = q(n, j, l, m2);
      if (qn.is_zero()) {
        info.zero_terms.push_back({j, k, "q(n,j,l,m2)=0"});
        continue;
      }
      const RadicalScalar& qk = q(k, j, l, m1);
      if (qk.is_zero()) {
        info.zero_terms.push_back({j, k, "q(k,j,l,m1)=0"});
        continue;
      }
      const ExactComplex factor = lambda_factor(k, j, l, m1).evaluate(lambda);
      if (factor.is_zero()) {
        info.zero_terms.push_back({j, k, "Lambda^(" + std::to_string(k) + ")=0"});
        continue;
      }
      const RadicalScalar scalar = c_factor(k) * qk * qn * RadicalScalar(static_cast<long>(sign));
      info.value += ExactComplex(scalar) * factor;
      ++info.nonzero_terms;
    }
  }
  return out;
}

struct LabelOutcome {
  std::vector<Leak> leaks;
  std::vector<BoundaryCertificate> certificates;
  std::set<Node> successors;  // nonzero Z transitions, any target
  double numeric_leak = 0.0;
};

LabelOutcome examine_label(const ExactLambda& lambda, const Delta& delta, const SubspaceSpec& spec,
                           const BasisLabel& label, bool interior) {
  LabelOutcome out;
  for (int n = -2; n <= 2; ++n) {
    const Generator g = z_generator(n);
    for (const auto& [to, info] : z_image(lambda, delta, n, label)) {
      const bool nonzero = !info.value.is_zero();
      if (nonzero) out.successors.insert({to.l, to.m1});
      if (!interior || spec.contains(to)) continue;
      if (nonzero) {
        out.leaks.push_back({label, g, to, info.value});
      } else {
        out.certificates.push_back({label, g, to, info.zero_terms, info.nonzero_terms > 0});
      }
    }
  }
  if (!interior) return out;
  for (Generator g : {Generator::Y1, Generator::Y2, Generator::Y3}) {
    for (const auto& [to, c] : act_on_basis(g, label, delta)) {
      if (spec.contains(to)) continue;
      const ExactComplex value = c.evaluate(lambda);
      if (!value.is_zero()) out.leaks.push_back({label, g, to, value});
    }
  }
  // The same images through the Wigner expansion, in floating point.
  const LambdaValue numeric = to_numeric(lambda);
  for (int n = -2; n <= 2; ++n) {
    for (const auto& [to, c] : act_Z_on_basis(n, label, delta)) {
      if (spec.contains(to)) continue;
      out.numeric_leak = std::max(out.numeric_leak, std::abs(c.evaluate(numeric)));
    }
  }
  return out;
}

std::vector<BasisLabel> span_labels(const Delta& delta, const SubspaceSpec& spec, int lmax) {
  std::vector<BasisLabel> out;
  for (int l = 0; l <= lmax; ++l) {
    for (const auto& b : basis(delta, l)) {
      if (spec.contains(b)) out.push_back(b);
    }
  }
  return out;
}

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

bool strongly_connected(const std::set<Node>& nodes, const std::map<Node, std::set<Node>>& edges) {
  if (nodes.size() <= 1) return true;
  std::map<Node, std::set<Node>> reverse;
  for (const auto& [from, targets] : edges) {
    for (const auto& to : targets) reverse[to].insert(from);
  }
  auto reach = [&](const std::map<Node, std::set<Node>>& graph) {
    std::set<Node> seen{*nodes.begin()};
    std::queue<Node> todo;
    todo.push(*nodes.begin());
    while (!todo.empty()) {
      const Node cur = todo.front();
      todo.pop();
      auto it = graph.find(cur);
      if (it == graph.end()) continue;
      for (const auto& next : it->second) {
        if (nodes.count(next) && seen.insert(next).second) todo.push(next);
      }
    }
    return seen.size() == nodes.size();
  };
  return reach(edges) && reach(reverse);
}

// Nodes of the span and nonzero Z transitions between them.
struct Graph {
  std::set<Node> nodes;
  std::map<Node, std::set<Node>> edges;
};

Graph build_graph(const std::vector<BasisLabel>& labels, const std::vector<LabelOutcome>& outcomes,
                  const std::function<bool(const Node&)>& member, int lmax) {
  Graph g;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Node from{labels[i].l, labels[i].m1};
    if (!member(from)) continue;
    g.nodes.insert(from);
    for (const auto& to : outcomes[i].successors) {
      if (to.first <= lmax && member(to)) g.edges[from].insert(to);
    }
  }
  return g;
}

std::string describe_status(const InvarianceResult& r) {
  const std::string window = "up to l_max = " + std::to_string(r.lmax);
  if (!r.invariant) return "NOT invariant (" + std::to_string(r.leaks.size()) + " leaks) " + window;
  if (!r.connected) return "invariant, not reachability-connected " + window;
  return "invariant and reachability-connected " + window;
}

std::string delta_string(const Delta& d) {
  return "(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + "," + std::to_string(d[2]) + ")";
}

std::string space_name(const ExactLambda& lambda, const Delta& delta) {
  return "V_{" + format_lambda(lambda) + "," + delta_string(delta) + "}";
}

}  // namespace

// ---- specs ----------------------------------------------------------------------

SubspaceSpec SubspaceSpec::complement() const {
  auto inner = contains;
  return {"complement of " + name, "not (" + description + ")",
          [inner](const BasisLabel& b) { return !inner(b); }};
}

SubspaceSpec SubspaceSpec::whole(std::string name) {
  return {std::move(name), "all labels", [](const BasisLabel&) { return true; }};
}

SubspaceSpec SubspaceSpec::m1_below(int k) {
  return {"m1<" + std::to_string(k), "m1 < " + std::to_string(k),
          [k](const BasisLabel& b) { return b.m1 < k; }};
}

SubspaceSpec SubspaceSpec::m1_at_least(int k) {
  return {"m1>=" + std::to_string(k), "m1 >= " + std::to_string(k),
          [k](const BasisLabel& b) { return b.m1 >= k; }};
}

SubspaceSpec SubspaceSpec::m1_equals(int m) {
  return {"m1=" + std::to_string(m), "m1 = " + std::to_string(m),
          [m](const BasisLabel& b) { return b.m1 == m; }};
}

SubspaceSpec SubspaceSpec::m1_equals_l_odd(int m) {
  return {"m1=" + std::to_string(m) + ",l odd", "m1 = " + std::to_string(m) + ", l odd",
          [m](const BasisLabel& b) { return b.m1 == m && b.l % 2 == 1; }};
}

// ---- invariance -----------------------------------------------------------------

std::map<std::string, int> InvarianceResult::certificate_summary() const {
  std::map<std::string, int> out;
  for (const auto& c : certificates) {
    for (const auto& t : c.terms) ++out[t.reason];
    if (c.cancellation) ++out["cancellation"];
  }
  return out;
}

nlohmann::json InvarianceResult::to_json(std::size_t max_certificates) const {
  nlohmann::json j;
  j["name"] = name;
  j["description"] = description;
  j["lambda"] = nlohmann::json::array(
      {lambda[0].to_string(), lambda[1].to_string(), lambda[2].to_string()});
  j["delta"] = delta;
  j["lmax"] = lmax;
  j["invariant"] = invariant;
  j["reachability_connected"] = connected;
  j["labels_checked"] = labels_checked;
  j["nodes"] = nodes;
  j["numeric_max_leak"] = numeric_max_leak;
  j["certificate_count"] = certificates.size();
  j["certificate_summary"] = certificate_summary();
  nlohmann::json certs = nlohmann::json::array();
  for (std::size_t i = 0; i < certificates.size() && i < max_certificates; ++i) {
    const auto& c = certificates[i];
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : c.terms) terms.push_back({{"j", t.j}, {"k", t.k}, {"reason", t.reason}});
    certs.push_back({{"from", label_json(c.from)},
                     {"generator", generator_name(c.generator)},
                     {"to", label_json(c.to)},
                     {"terms", terms},
                     {"cancellation", c.cancellation}});
  }
  j["certificates"] = certs;
  nlohmann::json leaks_json = nlohmann::json::array();
  for (std::size_t i = 0; i < leaks.size() && i < max_certificates; ++i) {
    const auto& l = leaks[i];
    leaks_json.push_back({{"from", label_json(l.from)},
                          {"generator", generator_name(l.generator)},
                          {"to", label_json(l.to)},
                          {"value", l.value.to_string()}});
  }
  j["leak_count"] = leaks.size();
  j["leaks"] = leaks_json;
  return j;
}

InvarianceResult verify_invariant(const ExactLambda& lambda, const Delta& delta,
                                  const SubspaceSpec& spec, int lmax, int threads) {
  if (lmax < 2) throw std::invalid_argument("verify_invariant: lmax must be at least 2");
  require_zero_sum(lambda);
  require_valid_delta(delta);
  const auto labels = span_labels(delta, spec, lmax);
  std::vector<LabelOutcome> outcomes(labels.size());
  parallel_for(labels.size(), threads, [&](std::size_t i) {
    outcomes[i] = examine_label(lambda, delta, spec, labels[i], labels[i].l <= lmax - 2);
  });

  InvarianceResult r;
  r.name = spec.name;
  r.description = spec.description;
  r.lambda = lambda;
  r.delta = delta;
  r.lmax = lmax;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].l <= lmax - 2) ++r.labels_checked;
    auto& o = outcomes[i];
    r.leaks.insert(r.leaks.end(), o.leaks.begin(), o.leaks.end());
    r.certificates.insert(r.certificates.end(), o.certificates.begin(), o.certificates.end());
    r.numeric_max_leak = std::max(r.numeric_max_leak, o.numeric_leak);
  }
  r.invariant = r.leaks.empty();
  const Graph g = build_graph(labels, outcomes,
                              [&](const Node& n) { return spec.contains_node(n.first, n.second); }, lmax);
  r.nodes = static_cast<int>(g.nodes.size());
  r.connected = strongly_connected(g.nodes, g.edges);
  return r;
}

bool reachability_connected(const ExactLambda& lambda, const Delta& delta, const SubspaceSpec& outer,
                            const SubspaceSpec& inner, int lmax, int threads) {
  require_zero_sum(lambda);
  require_valid_delta(delta);
  auto member = [&](const Node& n) {
    return outer.contains_node(n.first, n.second) && !inner.contains_node(n.first, n.second);
  };
  std::vector<BasisLabel> labels;
  for (const auto& b : span_labels(delta, outer, lmax)) {
    if (member({b.l, b.m1})) labels.push_back(b);
  }
  std::vector<LabelOutcome> outcomes(labels.size());
  parallel_for(labels.size(), threads, [&](std::size_t i) {
    for (int n = -2; n <= 2; ++n) {
      for (const auto& [to, info] : z_image(lambda, delta, n, labels[i])) {
        if (!info.value.is_zero()) outcomes[i].successors.insert({to.l, to.m1});
      }
    }
  });
  const Graph g = build_graph(labels, outcomes, member, lmax);
  return strongly_connected(g.nodes, g.edges);
}

int span_multiplicity(const Delta& delta, const SubspaceSpec& spec, int l) {
  std::set<int> m1s;
  for (const auto& b : basis(delta, l)) {
    if (spec.contains(b)) m1s.insert(b.m1);
  }
  return static_cast<int>(m1s.size());
}

DualityCheck duality_check(const ExactLambda& lambda, const Delta& delta, const SubspaceSpec& spec,
                           int lmax, int threads) {
  DualityCheck d;
  d.sub = verify_invariant(lambda, delta, spec, lmax, threads);
  d.dual_complement = verify_invariant(negate(lambda), delta, spec.complement(), lmax, threads);
  d.additive = true;
  for (int l = 0; l <= lmax; ++l) {
    const int total = span_multiplicity(delta, spec, l) +
                      span_multiplicity(delta, spec.complement(), l);
    if (total != multiplicity(delta, l)) d.additive = false;
  }
  return d;
}

// ---- reports --------------------------------------------------------------------

std::string format_lambda(const ExactLambda& lambda) {
  return "(" + lambda[0].to_string() + "," + lambda[1].to_string() + "," + lambda[2].to_string() + ")";
}

nlohmann::json StructureReport::to_json() const {
  nlohmann::json j;
  j["preset"] = preset;
  j["lambda"] = nlohmann::json::array(
      {lambda[0].to_string(), lambda[1].to_string(), lambda[2].to_string()});
  j["delta"] = delta;
  j["lmax"] = lmax;
  j["ok"] = ok;
  j["length"] = length ? nlohmann::json(*length) : nlohmann::json(nullptr);
  nlohmann::json chain_json = nlohmann::json::array();
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& link : chain) {
    nlohmann::json l;
    l["name"] = link.name;
    l["description"] = link.description;
    l["factor_connected"] = link.factor_connected;
    l["factor_label"] = link.factor_label;
    if (link.invariance) {
      l["invariance"] = link.invariance->to_json();
      for (const auto& c : l["invariance"]["certificates"]) certs.push_back(c);
    }
    if (link.dual) l["dual"] = link.dual->to_json();
    chain_json.push_back(l);
  }
  j["chain"] = chain_json;
  j["certificates"] = certs;
  j["multiplicity_columns"] = multiplicity_columns;
  nlohmann::json mult = nlohmann::json::object();
  for (const auto& [l, row] : multiplicities) mult[std::to_string(l)] = row;
  j["multiplicities"] = mult;
  if (!table_header.empty()) j["table"] = {{"header", table_header}, {"rows", table_rows}};
  j["notes"] = notes;
  j["extra"] = extra;
  return j;
}

std::string StructureReport::to_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& link = chain[i];
    os << (i == 0 ? "{0} < " : "< ") << link.name;
    if (!link.description.empty()) os << " [" << link.description << "]";
    os << ": ";
    const std::string window = "up to l_max = " + std::to_string(lmax);
    std::vector<std::string> parts;
    if (link.invariance) {
      std::string status = describe_status(*link.invariance);
      if (i > 0 && link.invariance->invariant) {
        status = std::string("invariant; quotient by ") + chain[i - 1].name +
                 (link.factor_connected ? " reachability-connected " : " not reachability-connected ") +
                 window;
      }
      parts.push_back(status);
    } else {
      std::string quotient = "quotient";
      if (!link.factor_label.empty()) quotient += " " + link.factor_label;
      parts.push_back(quotient + (link.factor_connected ? " reachability-connected " : " not reachability-connected ") + window);
    }
    if (link.dual) {
      parts.push_back("dual span " + link.dual->description + " in " +
                      space_name(link.dual->lambda, link.dual->delta) + " " +
                      describe_status(*link.dual));
    }
    if (i + 1 == chain.size() && length) parts.push_back("length " + std::to_string(*length));
    for (std::size_t p = 0; p < parts.size(); ++p) os << (p ? "; " : "") << parts[p];
    os << "\n";
  }
  if (!table_header.empty()) {
    std::vector<std::size_t> width(table_header.size());
    for (std::size_t c = 0; c < width.size(); ++c) {
      width[c] = display_width(table_header[c]);
      for (const auto& row : table_rows) width[c] = std::max(width[c], display_width(row[c]));
    }
    auto print_row = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        os << (c ? "  " : "") << row[c];
        if (c + 1 < row.size()) os << std::string(width[c] - display_width(row[c]), ' ');
      }
      os << "\n";
    };
    print_row(table_header);
    for (const auto& row : table_rows) print_row(row);
  }
  return os.str();
}

int even_k_multiplicity_A(int k, int l) { return std::max(0, 1 + (l - k >= 0 ? (l - k) / 2 : -((k - l + 1) / 2))); }

int even_k_multiplicity_B(int k, int l) {
  if (l % 2 == 1) return std::min(l / 2, (k - 2) / 2);
  return std::min(1 + l / 2, k / 2);
}

StructureReport even_k_report(int k, int lmax, int threads) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("even_k_report: k must be even and >= 2");
  if (lmax < k + 4) throw std::invalid_argument("even_k_report: lmax must be at least k + 4");
  StructureReport r;
  r.preset = "even-k";
  r.lambda = make_lambda(rational(-(k - 1), 2), rational(k - 1, 2));
  r.delta = {0, 0, 0};
  r.lmax = lmax;
  r.length = 2;

  const SubspaceSpec vb{"V_B", "m1 < " + std::to_string(k),
                        [k](const BasisLabel& b) { return b.m1 < k; }};
  const SubspaceSpec va{"V_A", "m1 >= " + std::to_string(k),
                        [k](const BasisLabel& b) { return b.m1 >= k; }};
  ChainLink sub{vb.name, vb.description, verify_invariant(r.lambda, r.delta, vb, lmax, threads), false, "",
                std::nullopt};
  sub.factor_connected = sub.invariance->connected;
  ChainLink top{space_name(r.lambda, r.delta), "", std::nullopt,
                reachability_connected(r.lambda, r.delta, SubspaceSpec::whole(), vb, lmax, threads),
                "V_A^*", verify_invariant(negate(r.lambda), r.delta, va, lmax, threads)};
  top.dual->name = va.name;
  r.chain = {sub, top};

  r.multiplicity_columns = {"m_A", "m_A formula", "m_B", "m_B formula", "m_delta"};
  r.table_header = {"l", "m_A", "formula", "m_B", "formula", "m_delta"};
  bool formulas = true;
  bool additive = true;
  for (int l = 0; l <= lmax; ++l) {
    const int a = span_multiplicity(r.delta, va, l);
    const int b = span_multiplicity(r.delta, vb, l);
    const int fa = even_k_multiplicity_A(k, l);
    const int fb = even_k_multiplicity_B(k, l);
    const int total = multiplicity(r.delta, l);
    formulas = formulas && a == fa && b == fb;
    additive = additive && a + b == total;
    r.multiplicities[l] = {a, fa, b, fb, total};
    r.table_rows.push_back({std::to_string(l), std::to_string(a), std::to_string(fa),
                            std::to_string(b), std::to_string(fb), std::to_string(total)});
  }
  r.extra["k"] = k;
  r.extra["formulas_match"] = formulas;
  r.extra["additive"] = additive;
  r.ok = sub.invariance->invariant && sub.invariance->connected && top.factor_connected &&
         top.dual->invariant && top.dual->connected && formulas && additive;
  return r;
}

StructureReport degenerate_series_report(const ExactComplex& s, int lmax, int threads) {
  if (lmax < 4) throw std::invalid_argument("degenerate_series_report: lmax must be at least 4");
  auto lambda_at = [](const ExactComplex& t) {
    return make_lambda(t - rational(1, 2), t + rational(1, 2));
  };
  StructureReport r;
  r.preset = "degenerate";
  r.lambda = lambda_at(s);
  r.delta = {0, 0, 0};
  r.lmax = lmax;

  // U_{+-1} on the span of m1 = 0.
  bool u_odd_zero = true;
  for (int l = 0; l <= lmax - 2; l += 2) {
    for (int m2 = -l; m2 <= l; ++m2) {
      for (int j : {-1, 1}) {
        if (!evaluate(act_U(j, {l, 0, m2}), r.lambda).empty()) u_odd_zero = false;
      }
    }
  }

  // Ladder coefficients read from U_{+-2} D^l_{0,0}, and the parameter value at
  // which each vanishes (each is affine in s).
  const ExactLambda at0 = lambda_at(rational(0));
  const ExactLambda at1 = lambda_at(rational(1));
  std::optional<std::pair<int, int>> vanishing;  // (l, j)
  nlohmann::json rungs = nlohmann::json::array();
  bool closed_form = true;
  r.table_header = {"l", "U_2 coefficient", "U_-2 coefficient", "s where U_2 vanishes",
                    "s where U_-2 vanishes"};
  for (int l = 0; l <= lmax - 2; l += 2) {
    std::vector<std::string> row{std::to_string(l)};
    std::vector<std::string> rung_cells;
    for (int j : {2, -2}) {
      if (l + j < 0) {
        row.push_back("-");
        rung_cells.push_back("-");
        continue;
      }
      const auto image = act_U(j, {l, 0, 0});
      const LambdaForm form = image.coefficient({l + j, 0, 0});
      const ExactComplex value = form.evaluate(r.lambda);
      row.push_back(value.to_string());
      const ExactComplex b = form.evaluate(at0);
      const ExactComplex a = form.evaluate(at1) - b;
      const ExactComplex root = -b * ExactComplex(a.re.inverse());
      rung_cells.push_back(root.to_string());
      rungs.push_back({{"l", l}, {"j", j}, {"s", root.to_string()}});
      if (value.is_zero() && !vanishing) vanishing = std::make_pair(l, j);
      // sqrt(2/3) q(0,j,l,0) (6s + j l + (j + j^2)/2)
      const ExactComplex expected =
          ExactComplex(c_factor(0) * q(0, j, l, 0)) *
          (rational(6) * s + rational(j * l + (j + j * j) / 2));
      if (expected != value) closed_form = false;
    }
    row.insert(row.end(), rung_cells.begin(), rung_cells.end());
    r.table_rows.push_back(row);
  }

  const SubspaceSpec span{"V_s", "m1 = 0", [](const BasisLabel& b) { return b.m1 == 0; }};
  if (vanishing) {
    const auto [l0, j] = *vanishing;
    SubspaceSpec inner;
    if (j == 2) {
      inner = {"V_s(l<=" + std::to_string(l0) + ")", "m1 = 0, l <= " + std::to_string(l0),
               [l0](const BasisLabel& b) { return b.m1 == 0 && b.l <= l0; }};
    } else {
      inner = {"V_s(l>=" + std::to_string(l0) + ")", "m1 = 0, l >= " + std::to_string(l0),
               [l0](const BasisLabel& b) { return b.m1 == 0 && b.l >= l0; }};
    }
    ChainLink a{inner.name, inner.description, verify_invariant(r.lambda, r.delta, inner, lmax, threads),
                false, "", std::nullopt};
    a.factor_connected = a.invariance->connected;
    ChainLink b{span.name, span.description, verify_invariant(r.lambda, r.delta, span, lmax, threads),
                reachability_connected(r.lambda, r.delta, span, inner, lmax, threads), "", std::nullopt};
    r.chain = {a, b};
  } else {
    ChainLink a{span.name, span.description, verify_invariant(r.lambda, r.delta, span, lmax, threads),
                false, "", std::nullopt};
    a.factor_connected = a.invariance->connected;
    r.chain = {a};
  }

  r.extra["s"] = s.to_string();
  r.extra["u_odd_vanish"] = u_odd_zero;
  r.extra["closed_form_matches"] = closed_form;
  r.extra["rungs"] = rungs;
  r.extra["reducible"] = vanishing.has_value();
  if (vanishing) r.extra["vanishing_rung"] = {{"l", vanishing->first}, {"j", vanishing->second}};
  const ExactLambda k2 = make_lambda(rational(-1, 2), rational(1, 2));
  bool matches_k2 = r.lambda == k2;
  if (matches_k2) {
    const SubspaceSpec vb = SubspaceSpec::m1_below(2);
    for (int l = 0; l <= lmax; ++l) {
      for (const auto& lab : basis(r.delta, l)) matches_k2 = matches_k2 && span.contains(lab) == vb.contains(lab);
    }
  }
  r.extra["matches_even_k2_V_B"] = matches_k2;
  r.notes.push_back("ladder coefficient of U_j on m1 = 0 is sqrt(2/3) q(0,j,l,0) (6s + j l + (j + j^2)/2)");
  bool chain_ok = true;
  for (const auto& link : r.chain) chain_ok = chain_ok && link.invariance->invariant;
  r.ok = u_odd_zero && closed_form && chain_ok;
  return r;
}

StructureReport k3_chain_report(int lmax, int threads) {
  if (lmax < 6) throw std::invalid_argument("k3_chain_report: lmax must be at least 6");
  StructureReport r;
  r.preset = "k3";
  r.lambda = make_lambda(rational(-1), rational(1));
  r.delta = {1, 0, 1};
  r.lmax = lmax;
  r.length = 3;

  const SubspaceSpec odd{"V(1)_odd", "m1 = 1, l odd",
                         [](const BasisLabel& b) { return b.m1 == 1 && b.l % 2 == 1; }};
  const SubspaceSpec one{"V(1)", "m1 = 1", [](const BasisLabel& b) { return b.m1 == 1; }};
  const SubspaceSpec sym{"Sym2", "m1 >= 3", [](const BasisLabel& b) { return b.m1 >= 3; }};

  ChainLink first{odd.name, odd.description, verify_invariant(r.lambda, r.delta, odd, lmax, threads),
                  false, "", std::nullopt};
  first.factor_connected = first.invariance->connected;
  ChainLink second{one.name, one.description, verify_invariant(r.lambda, r.delta, one, lmax, threads),
                   reachability_connected(r.lambda, r.delta, one, odd, lmax, threads), "", std::nullopt};
  ChainLink top{space_name(r.lambda, r.delta), "", std::nullopt,
                reachability_connected(r.lambda, r.delta, SubspaceSpec::whole(), one, lmax, threads),
                "⋀D2", verify_invariant(negate(r.lambda), r.delta, sym, lmax, threads)};
  r.chain = {first, second, top};
  r.multiplicity_columns = {"V(1)_odd", "V(1)/V(1)_odd", "V/V(1)", "m_delta"};
  for (int l = 0; l <= lmax; ++l) {
    const int a = span_multiplicity(r.delta, odd, l);
    const int b = span_multiplicity(r.delta, one, l) - a;
    const int total = multiplicity(r.delta, l);
    r.multiplicities[l] = {a, b, total - a - b, total};
  }
  r.extra["quotient"] = "symmetric square of the discrete series D2";
  r.ok = first.invariance->invariant && first.invariance->connected && second.invariance->invariant &&
         second.factor_connected && top.factor_connected && top.dual->invariant;
  return r;
}

StructureReport k23_subspace_report(int lmax, int threads) {
  if (lmax < 27) throw std::invalid_argument("k23_subspace_report: lmax must be at least 27");
  StructureReport r;
  r.preset = "k23";
  r.lambda = make_lambda(rational(11), rational(-11));
  r.delta = {1, 0, 1};
  r.lmax = lmax;
  const SubspaceSpec sub{"V(23)", "m1 >= 23", [](const BasisLabel& b) { return b.m1 >= 23; }};
  ChainLink link{sub.name, sub.description, verify_invariant(r.lambda, r.delta, sub, lmax, threads),
                 false, "", std::nullopt};
  link.factor_connected = link.invariance->connected;
  r.chain = {link};
  r.multiplicity_columns = {"V(23)", "m_delta"};
  r.table_header = {"l", "V(23)", "m_delta"};
  for (int l = 0; l <= lmax; ++l) {
    const int a = span_multiplicity(r.delta, sub, l);
    r.multiplicities[l] = {a, multiplicity(r.delta, l)};
    if (l >= 21) r.table_rows.push_back({std::to_string(l), std::to_string(a), std::to_string(multiplicity(r.delta, l))});
  }
  r.extra["first_k_type"] = 23;
  r.extra["unexplored"] = "remaining composition factors are not analysed";
  r.ok = link.invariance->invariant && link.invariance->connected && r.multiplicities[23][0] == 1 &&
         r.multiplicities[22][0] == 0;
  return r;
}

}  // namespace sl3k
