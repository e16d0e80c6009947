#include "sl3k/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sl3k {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

bool parity_ok(const SL2Params& p, int l) { return ((l - p.epsilon) % 2 + 2) % 2 == 0; }

void require_parity(const SL2Params& p, const SL2Vector& v) {
  for (const auto& [l, c] : v) {
    if (!parity_ok(p, l)) {
      throw std::invalid_argument("weight " + std::to_string(l) + " violates parity " +
                                  std::to_string(p.epsilon));
    }
  }
}

void add(SL2Vector& v, int l, std::complex<double> c) {
  if (c == 0.0) return;
  auto [it, inserted] = v.try_emplace(l, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) v.erase(it);
  }
}

std::complex<double> two_nu_plus_one(const SL2Params& p) { return 2.0 * p.nu + 1.0; }

}  // namespace

SL2Params SL2Params::exact(const Rational& nu, int epsilon) {
  if (epsilon != 0 && epsilon != 1) throw std::invalid_argument("epsilon must be 0 or 1");
  Rational n = nu;
  n.canonicalize();
  return {std::complex<double>(n.get_d(), 0.0), n, epsilon};
}

SL2Params SL2Params::numeric(std::complex<double> nu, int epsilon) {
  if (epsilon != 0 && epsilon != 1) throw std::invalid_argument("epsilon must be 0 or 1");
  return {nu, std::nullopt, epsilon};
}

SL2Vector sl2_raise(const SL2Params& p, const SL2Vector& v) {
  require_parity(p, v);
  SL2Vector out;
  for (const auto& [l, c] : v) add(out, l + 2, c * (two_nu_plus_one(p) + double(l)));
  return out;
}

SL2Vector sl2_lower(const SL2Params& p, const SL2Vector& v) {
  require_parity(p, v);
  SL2Vector out;
  for (const auto& [l, c] : v) add(out, l - 2, c * (two_nu_plus_one(p) - double(l)));
  return out;
}

SL2Vector sl2_weight(const SL2Params& p, const SL2Vector& v) {
  require_parity(p, v);
  SL2Vector out;
  for (const auto& [l, c] : v) add(out, l, c * kI * double(l));
  return out;
}

SL2Vector sl2_standard_basis_action(const SL2Params& p, SL2Generator g, const SL2Vector& v) {
  require_parity(p, v);
  SL2Vector out;
  const std::complex<double> two_nu = 2.0 * p.nu;
  for (const auto& [l, c] : v) {
    const std::complex<double> down = double(l) - 1.0 - two_nu;
    const std::complex<double> up = double(l) + 1.0 + two_nu;
    switch (g) {
      case SL2Generator::E:
        add(out, l - 2, c * kI * down / 4.0);
        add(out, l, -c * kI * double(l) / 2.0);
        add(out, l + 2, c * kI * up / 4.0);
        break;
      case SL2Generator::H:
        add(out, l - 2, -c * down / 2.0);
        add(out, l + 2, c * up / 2.0);
        break;
      case SL2Generator::F:
        add(out, l - 2, c * kI * down / 4.0);
        add(out, l, c * kI * double(l) / 2.0);
        add(out, l + 2, c * kI * up / 4.0);
        break;
    }
  }
  return out;
}

Rational sl2_raise_coefficient(const SL2Params& p, int l) {
  if (!p.exact_nu) throw std::invalid_argument("exact coefficient requested for numeric nu");
  Rational out = 2 * *p.exact_nu + 1 + l;
  out.canonicalize();
  return out;
}

Rational sl2_lower_coefficient(const SL2Params& p, int l) {
  if (!p.exact_nu) throw std::invalid_argument("exact coefficient requested for numeric nu");
  Rational out = 2 * *p.exact_nu + 1 - l;
  out.canonicalize();
  return out;
}

bool SL2Segment::contains(int l) const {
  return (!lo || l >= *lo) && (!hi || l <= *hi);
}

std::string SL2Segment::to_string() const {
  std::ostringstream os;
  os << "{";
  if (lo && hi) {
    for (int l = *lo; l <= *hi; l += 2) os << (l == *lo ? "" : ",") << l;
  } else if (lo) {
    os << *lo << "," << *lo + 2 << "," << *lo + 4 << ",...";
  } else if (hi) {
    os << "...," << *hi - 4 << "," << *hi - 2 << "," << *hi;
  } else {
    os << "all weights";
  }
  os << "}";
  return os.str();
}

bool SL2CompositionReport::in_submodule(int l) const {
  for (int i : submodule) {
    if (segments[i].contains(l)) return true;
  }
  return false;
}

nlohmann::json SL2CompositionReport::to_json() const {
  auto seg = [](const SL2Segment& s) {
    nlohmann::json j;
    j["lo"] = s.lo ? nlohmann::json(*s.lo) : nlohmann::json(nullptr);
    j["hi"] = s.hi ? nlohmann::json(*s.hi) : nlohmann::json(nullptr);
    return j;
  };
  nlohmann::json j;
  j["irreducible"] = irreducible;
  j["exact"] = exact;
  j["segments"] = nlohmann::json::array();
  for (const auto& s : segments) j["segments"].push_back(seg(s));
  j["submodule"] = submodule;
  j["quotient"] = quotient;
  j["summary"] = summary;
  return j;
}

SL2CompositionReport sl2_composition_report(const SL2Params& p) {
  SL2CompositionReport report;
  report.exact = p.exact_nu.has_value();
  if (!p.exact_nu) {
    // Without an exact value, ladder coefficients are only zero when 2nu+1 is an
    // integer of the right parity; a numeric nu never certifies that.
    report.segments.push_back({});
    report.submodule = {0};
    report.summary = "irreducible (nu not exact; no ladder coefficient certified zero)";
    return report;
  }
  const Rational c = 2 * *p.exact_nu + 1;
  const bool integral = c.get_den() == 1;
  const bool breaks = integral && parity_ok(p, static_cast<int>(c.get_num().get_si()));
  if (!breaks) {
    report.segments.push_back({});
    report.submodule = {0};
    report.summary = "irreducible";
    return report;
  }
  // raise vanishes on v_{-c}; lower vanishes on v_{c}.
  const int cc = static_cast<int>(c.get_num().get_si());
  const int raise_stop = -cc;  // no step raise_stop -> raise_stop + 2
  const int lower_stop = cc;   // no step lower_stop -> lower_stop - 2
  std::vector<int> cuts;       // a cut between w and w+2 is recorded as w
  cuts.push_back(raise_stop);
  if (lower_stop - 2 != raise_stop) cuts.push_back(lower_stop - 2);
  std::sort(cuts.begin(), cuts.end());
  std::optional<int> lo;
  for (int cut : cuts) {
    report.segments.push_back({lo, cut});
    lo = cut + 2;
  }
  report.segments.push_back({lo, std::nullopt});
  // Drop segments that are empty (lo > hi).
  std::vector<SL2Segment> kept;
  for (const auto& s : report.segments) {
    if (!(s.lo && s.hi && *s.lo > *s.hi)) kept.push_back(s);
  }
  report.segments = kept;
  report.irreducible = false;

  const int n = static_cast<int>(report.segments.size());
  for (int i = 0; i < n; ++i) {
    const auto& s = report.segments[i];
    bool leaves = false;
    if (s.hi) leaves = leaves || sl2_raise_coefficient(p, *s.hi) != 0;  // up to next segment
    if (s.lo) leaves = leaves || sl2_lower_coefficient(p, *s.lo) != 0;  // down to previous
    (leaves ? report.quotient : report.submodule).push_back(i);
  }

  std::ostringstream os;
  os << "reducible; submodule weights";
  for (std::size_t i = 0; i < report.submodule.size(); ++i) {
    os << (i == 0 ? " " : " + ") << report.segments[report.submodule[i]].to_string();
  }
  os << "; quotient weights";
  if (report.quotient.empty()) os << " {}";
  for (std::size_t i = 0; i < report.quotient.size(); ++i) {
    os << (i == 0 ? " " : " + ") << report.segments[report.quotient[i]].to_string();
  }
  report.summary = os.str();
  return report;
}

bool sl2_verify_submodule(const SL2Params& p, const SL2CompositionReport& report, int window) {
  if (!p.exact_nu) return report.irreducible;
  for (int l = -window; l <= window; ++l) {
    if (!parity_ok(p, l) || !report.in_submodule(l)) continue;
    if (sl2_raise_coefficient(p, l) != 0 && !report.in_submodule(l + 2)) return false;
    if (sl2_lower_coefficient(p, l) != 0 && !report.in_submodule(l - 2)) return false;
  }
  return true;
}

}  // namespace sl3k
