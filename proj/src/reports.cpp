#include "sglab/reports.hpp"

#include <cstdio>
#include <sstream>

namespace sglab {

using nlohmann::json;

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// CSV text with a units comment and a header row.
class Table {
 public:
  Table(const std::string& units, const std::vector<std::string>& header) {
    os_ << "# units: " << units << '\n';
    for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
    os_ << '\n';
  }

  Table& cell(double v) { return put(format_double(v)); }
  Table& cell(std::size_t v) { return put(std::to_string(v)); }
  Table& cell(const std::string& s) { return put(s); }
  Table& cell(const std::optional<double>& v) { return put(v ? format_double(*v) : "nan"); }
  void end() {
    os_ << '\n';
    first_ = true;
  }
  std::string str() const { return os_.str(); }

 private:
  Table& put(const std::string& s) {
    if (!first_) os_ << ',';
    os_ << s;
    first_ = false;
    return *this;
  }
  std::ostringstream os_;
  bool first_ = true;
};

json to_json(const SweepPoint& pt) {
  json profile = json::array();
  for (const auto& q : pt.profile) profile.push_back({q.t, q.value});
  return {{"eps", pt.eps},
          {"horizon", pt.horizon},
          {"nx", pt.nx},
          {"nt", pt.nt},
          {"refinements", pt.refinements},
          {"relative_change", pt.change},
          {"window_empty", pt.window_empty},
          {"sup_S", opt(pt.sup_s)},
          {"sup_S_full", pt.sup_s_full},
          {"scale", pt.scale},
          {"ratio", opt(pt.ratio)},
          {"ratio_full", pt.ratio_full},
          {"S_profile", profile}};
}

json to_json(const ScalingSummary& s) {
  return {{"complete", s.complete},
          {"fitted_exponent", opt(s.fitted_exponent)},
          {"fit_error", s.fit_error.empty() ? json(nullptr) : json(s.fit_error)},
          {"fitted_Gamma", opt(s.fitted_gamma)},
          {"ratio_spread", opt(s.ratio_spread)},
          {"strictly_decreasing", s.strictly_decreasing},
          {"passed", s.passed}};
}

json to_json(const BandFit& b) {
  return {{"status", to_string(b.status)},
          {"first", b.first},
          {"last", b.last},
          {"lhs", b.lhs},
          {"envelope", b.envelope},
          {"fitted", b.status == BandStatus::Evaluated ? json(b.fitted) : json(nullptr)}};
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

const std::string* Artifact::table(const std::string& name) const {
  for (const auto& [n, text] : tables)
    if (n == name) return &text;
  return nullptr;
}

json to_json(const ModelParams& p) {
  return {{"ell", p.ell},
          {"alpha", p.alpha},
          {"eps", p.eps},
          {"gamma", p.gamma_bias},
          {"horizon", p.horizon}};
}

Artifact make_artifact(const EnvelopeReport& r) {
  Artifact a;
  a.kind = "envelope";
  a.passed = r.passed;
  Table t("t in time units; sums and envelopes dimensionless",
          {"eps", "t", "sum_h", "tail", "modes", "envelope", "ratio", "envelope_min",
           "ratio_min"});
  json rows = json::array();
  for (const auto& row : r.rows) {
    for (const auto& d : row.points) {
      t.cell(row.eps).cell(d.t).cell(d.sum_h).cell(d.tail).cell(d.modes).cell(d.envelope)
          .cell(d.ratio).cell(d.envelope_min).cell(d.ratio_min).end();
    }
    rows.push_back({{"eps", row.eps},
                    {"sup_ratio", row.sup_ratio},
                    {"t_at_sup", row.t_at_sup},
                    {"sup_ratio_min", row.sup_ratio_min},
                    {"sup_abs_ratio", row.sup_abs_ratio},
                    {"sum_h_first", row.points.front().sum_h},
                    {"sum_h_last", row.points.back().sum_h}});
  }
  a.json = {{"kind", a.kind},
            {"params", to_json(r.base)},
            {"t_grid", r.options.t_grid},
            {"policy", {{"max_modes", r.options.policy.max_modes},
                        {"tail_tol", r.options.policy.tail_tol}}},
            {"m", r.m},
            {"m_min", r.m_min},
            {"uniformity_factor", r.options.uniformity_factor},
            {"per_eps", rows},
            {"spread", r.spread},
            {"growth", r.growth},
            {"spread_min", r.spread_min},
            {"growth_min", r.growth_min},
            {"spread_abs", r.spread_abs},
            {"decays", r.decays},
            {"passed", r.passed},
            {"passed_min", r.passed_min}};
  a.tables.emplace_back("envelope", t.str());
  return a;
}

Artifact make_artifact(const LemmaReport& r) {
  Artifact a;
  a.kind = "lemma";
  a.passed = r.passed;
  Table t("t in time units; lhs and envelope dimensionless",
          {"eps", "band", "t", "lhs", "envelope"});
  json rows = json::array();
  for (const auto& row : r.rows) {
    const std::pair<const char*, const BandFit*> bands[] = {
        {"hyperbolic_tail", &row.tail}, {"low_band", &row.low}, {"circular_band", &row.circular}};
    for (const auto& [name, b] : bands)
      for (std::size_t i = 0; i < b->lhs.size(); ++i)
        t.cell(row.eps).cell(std::string(name)).cell(r.options.t_grid[i]).cell(b->lhs[i])
            .cell(b->envelope[i]).end();
    rows.push_back({{"eps", row.eps},
                    {"N1", row.n1},
                    {"N2", row.n2},
                    {"hyperbolic_tail", to_json(row.tail)},
                    {"low_band", to_json(row.low)},
                    {"circular_band", to_json(row.circular)}});
  }
  json verdicts = json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back({{"name", v.name},
                        {"skipped", v.skipped},
                        {"growth", v.skipped ? json(nullptr) : json(v.growth)},
                        {"positive", v.positive},
                        {"passed", v.passed}});
  const auto& c = r.options.constants;
  a.json = {{"kind", a.kind},
            {"params", to_json(r.base)},
            {"constants", {{"eta", c.eta}, {"h", c.h}, {"k", c.k}, {"rho", c.rho()}}},
            {"t_grid", r.options.t_grid},
            {"tail_modes", r.options.tail_modes},
            {"uniformity_factor", r.options.uniformity_factor},
            {"per_eps", rows},
            {"verdicts", verdicts},
            {"passed", r.passed}};
  a.tables.emplace_back("lemma", t.str());
  return a;
}

Artifact make_artifact(const SweepReport& r) {
  Artifact a;
  a.kind = "sweep";
  a.passed = r.passed;
  Table prof("t in time units; S in radians", {"eps", "nx", "nt", "t", "S"});
  Table summary("horizon in time units; sup_S in radians; ratios dimensionless",
                {"eps", "horizon", "nx", "nt", "refinements", "relative_change", "sup_S",
                 "sup_S_full", "scale", "ratio", "ratio_full"});
  json pts = json::array();
  for (const auto& pt : r.per_eps) {
    for (const auto& q : pt.profile)
      prof.cell(pt.eps).cell(pt.nx).cell(pt.nt).cell(q.t).cell(q.value).end();
    summary.cell(pt.eps).cell(pt.horizon).cell(pt.nx).cell(pt.nt).cell(pt.refinements)
        .cell(pt.change).cell(pt.sup_s).cell(pt.sup_s_full).cell(pt.scale).cell(pt.ratio)
        .cell(pt.ratio_full).end();
    pts.push_back(to_json(pt));
  }
  a.json = {{"kind", a.kind},
            {"params", to_json(r.base)},
            {"family", {{"kind", to_string(r.family.family)}, {"alpha", r.family.alpha}}},
            {"k", r.scaling.k},
            {"window_start", r.scaling.window_start},
            {"grid_policy", {{"nx0", r.grids.nx0},
                             {"nx_max", r.grids.nx_max},
                             {"courant", r.grids.courant},
                             {"stabilization", r.grids.stabilization}}},
            {"certificate_sup_u_xxt", r.certificate},
            {"ratio_limit", r.ratio_limit},
            {"per_eps", pts},
            {"window", to_json(r.window)},
            {"full_window", to_json(r.full)},
            {"passed", r.passed}};
  a.tables.emplace_back("s_profiles", prof.str());
  a.tables.emplace_back("sweep", summary.str());
  return a;
}

Artifact make_artifact(const MemoryReport& r) {
  Artifact a;
  a.kind = "memory";
  a.passed = true;  // the experiment reports; it does not gate
  Table t("t in time units; differences in radians", {"t", "diff_implied", "diff_given"});
  for (std::size_t k = 0; k < r.profile_implied.size(); ++k)
    t.cell(r.profile_implied[k].t).cell(r.profile_implied[k].value)
        .cell(r.profile_given[k].value).end();
  a.json = {{"kind", a.kind},
            {"params", to_json(r.params)},
            {"memory_params", {{"a", r.memory.a_coef},
                               {"delta", r.memory.delta},
                               {"beta", r.memory.beta}}},
            {"grid", {{"nx", r.options.nx}, {"nt", r.options.nt}}},
            {"amplitude", r.options.amplitude},
            {"agreement_factor", r.options.agreement_factor},
            {"velocity_gap", r.velocity_gap},
            {"diff_implied", r.diff_implied},
            {"diff_given", r.diff_given},
            {"error_memory", r.error_memory},
            {"error_full", r.error_full},
            {"agrees_implied", r.agrees_implied},
            {"agrees_given", r.agrees_given},
            {"finding", r.finding}};
  a.tables.emplace_back("memory", t.str());
  return a;
}

}  // namespace sglab
