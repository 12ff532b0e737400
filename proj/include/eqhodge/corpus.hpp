#pragma once

// Acceptance corpus: fixture covers, the twelve checks, and the report
// tables they produce. Shared by `eqhodge corpus` and the acceptance binary.

#include <Eigen/Core>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "eqhodge/cover.hpp"
#include "eqhodge/delocalized.hpp"
#include "eqhodge/error.hpp"
#include "eqhodge/fixtures.hpp"
#include "eqhodge/group.hpp"
#include "eqhodge/hodge.hpp"
#include "eqhodge/io.hpp"
#include "eqhodge/morse.hpp"
#include "eqhodge/oneform.hpp"
#include "eqhodge/random.hpp"
#include "eqhodge/witten.hpp"

namespace eqhodge {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// trivial | orientation | omega (Z/m cover of the fixture's 1-cochain) | voltage (the fixture's own group).
struct CoverSpec {
  std::string kind = "trivial";
  int m = 1;
};

inline CoverComplex make_cover(const FixtureData& d, const CoverSpec& spec) {
  if (spec.kind == "trivial") return trivial_cover(d.complex);
  if (spec.kind == "orientation") return build_cover(d.complex, cyclic_group(2), orientation_voltage(d.complex));
  if (spec.kind == "omega") {
    if (!d.has_omega) throw Error("cover", "make_cover", "fixture " + d.name + " has no 1-cochain");
    return cyclic_cover(d.complex, ClosedOneCochain(d.complex, d.omega), spec.m);
  }
  if (spec.kind == "voltage") {
    if (!d.group) throw Error("cover", "make_cover", "fixture " + d.name + " has no group voltage");
    return build_cover(d.complex, *d.group, d.voltage);
  }
  throw Error("cover", "make_cover", "unknown cover kind '" + spec.kind + "'");
}

inline std::string cover_flags(const std::string& fixture, const CoverSpec& spec) {
  std::string s = "--fixture " + fixture + " --cover " + spec.kind;
  if (spec.kind == "omega") s += " --m " + std::to_string(spec.m);
  return s;
}

inline std::string cover_label(const std::string& fixture, const CoverSpec& spec) {
  if (spec.kind == "omega") return fixture + "/Z" + std::to_string(spec.m);
  return fixture + "/" + spec.kind;
}

struct CorpusItemSpec {
  std::string fixture;
  CoverSpec cover;
};

struct OneFormSpec {
  std::string fixture;
  std::vector<int> m_list;
  int power = 1;
  std::vector<double> expect_m_beta;  // optional: m·β_e^k(m) for every m
};

struct CorpusConfig {
  std::vector<CorpusItemSpec> items;
  std::vector<OneFormSpec> oneform;
  std::vector<OneFormSpec> fibration;
  std::vector<double> s_grid{0.0, 1.0, 2.0};
  std::vector<double> t_grid{0.5, 1.0, 2.0};
  std::vector<double> invariance_s{0.25, 0.5, 1.0, 2.0, 4.0};
  std::uint64_t seed = kDefaultSeed;
  int positivity_trials = 200;
  int trace_pairs = 50;
  int lift_trials = 20;
  double oracle_seconds = 60.0;
};

/// The shipped corpus (also written to data/fixtures/corpus.json).
inline CorpusConfig default_corpus_config() {
  CorpusConfig c;
  for (int m = 2; m <= 6; ++m) c.items.push_back({"cycle3", {"omega", m}});
  c.items.push_back({"rp2", {"orientation", 2}});
  for (int m = 2; m <= 6; ++m) c.items.push_back({"torus", {"omega", m}});
  c.items.push_back({"klein_bottle", {"orientation", 2}});
  c.items.push_back({"figure_eight_s3", {"voltage", 6}});
  c.oneform = {{"torus", {2, 3, 4, 5, 6}, 1, {1, 2, 1}}, {"klein_bottle", {2, 3, 4, 5, 6}, 1, {}}};
  c.fibration = {{"torus", {2, 3, 4, 5, 6}, 1, {}}, {"klein_bottle", {2, 3, 4, 5, 6}, 1, {}}};
  return c;
}

namespace detail {

inline std::vector<double> json_doubles(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema_error(where, "expected a nonempty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<OneFormSpec> oneform_specs(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  std::vector<OneFormSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    OneFormSpec s;
    s.fixture = as_string(require_field(j[i], "fixture", w), w + ".fixture");
    s.m_list = as_int_array(require_field(j[i], "m", w), w + ".m");
    if (j[i].contains("power")) s.power = as_int(j[i]["power"], w + ".power");
    if (j[i].contains("expect_m_beta")) s.expect_m_beta = json_doubles(j[i]["expect_m_beta"], w + ".expect_m_beta");
    out.push_back(s);
  }
  return out;
}

inline Json oneform_specs_json(const std::vector<OneFormSpec>& specs) {
  Json a = Json::array();
  for (const auto& s : specs) {
    Json o{{"fixture", s.fixture}, {"m", s.m_list}};
    if (s.power != 1) o["power"] = s.power;
    if (!s.expect_m_beta.empty()) o["expect_m_beta"] = s.expect_m_beta;
    a.push_back(o);
  }
  return a;
}

}  // namespace detail

inline CorpusConfig corpus_config_from_json(const Json& j, const std::string& where = "corpus") {
  CorpusConfig c;
  const Json& items = detail::require_field(j, "items", where);
  if (!items.is_array()) detail::schema_error(where + ".items", "expected an array");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string w = where + ".items[" + std::to_string(i) + "]";
    CorpusItemSpec s;
    s.fixture = detail::as_string(detail::require_field(items[i], "fixture", w), w + ".fixture");
    s.cover.kind = detail::as_string(detail::require_field(items[i], "cover", w), w + ".cover");
    if (s.cover.kind != "trivial" && s.cover.kind != "orientation" && s.cover.kind != "omega" && s.cover.kind != "voltage")
      detail::schema_error(w + ".cover", "expected one of trivial, orientation, omega, voltage");
    if (s.cover.kind == "omega") s.cover.m = detail::as_int(detail::require_field(items[i], "m", w), w + ".m");
    c.items.push_back(s);
  }
  if (j.contains("oneform")) c.oneform = detail::oneform_specs(j["oneform"], where + ".oneform");
  if (j.contains("fibration")) c.fibration = detail::oneform_specs(j["fibration"], where + ".fibration");
  if (j.contains("s_grid")) c.s_grid = detail::json_doubles(j["s_grid"], where + ".s_grid");
  if (j.contains("t_grid")) c.t_grid = detail::json_doubles(j["t_grid"], where + ".t_grid");
  if (j.contains("invariance_s")) c.invariance_s = detail::json_doubles(j["invariance_s"], where + ".invariance_s");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) detail::schema_error(where + ".seed", "expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  return c;
}

inline Json corpus_config_to_json(const CorpusConfig& c) {
  Json items = Json::array();
  for (const auto& s : c.items) {
    Json o{{"fixture", s.fixture}, {"cover", s.cover.kind}};
    if (s.cover.kind == "omega") o["m"] = s.cover.m;
    items.push_back(o);
  }
  return Json{{"seed", c.seed},
              {"s_grid", c.s_grid},
              {"t_grid", c.t_grid},
              {"invariance_s", c.invariance_s},
              {"items", items},
              {"oneform", detail::oneform_specs_json(c.oneform)},
              {"fibration", detail::oneform_specs_json(c.fibration)}};
}

/// <fixture dir>/corpus.json if present, else the default corpus.
inline CorpusConfig load_corpus_config() {
  const auto path = fixture_directory() / "corpus.json";
  if (std::filesystem::exists(path)) return corpus_config_from_json(read_json_file(path), path.string());
  return default_corpus_config();
}

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = true;
  std::string detail;
  double seconds = 0.0;  // wall time; kept out of the reports
};

struct CorpusResult {
  std::vector<Table> tables;
  std::vector<CriterionResult> criteria;
  bool all_pass() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
  }
  const Table& table(const std::string& name) const {
    for (const auto& t : tables)
      if (t.name == name) return t;
    throw Error("cli", "report", "no table " + name);
  }
};

namespace detail {

struct Check {
  bool pass = true;
  std::size_t count = 0;
  std::size_t failed = 0;
  double worst = 0.0;  // largest violation measure seen
  void record(bool ok, double measure = 0.0) {
    ++count;
    if (!ok) {
      pass = false;
      ++failed;
    }
    worst = std::max(worst, measure);
  }
  std::string summary(const std::string& what) const {
    return std::to_string(count - failed) + "/" + std::to_string(count) + " " + what + "; worst " + format_number(worst);
  }
};

inline std::string class_name(const ConjugacyClass& c, int identity) {
  return c.representative == identity ? "e" : std::to_string(c.representative);
}

inline std::vector<std::size_t> random_lifts(const CoverComplex& C, int k, SplitMix64& rng) {
  std::vector<std::size_t> out(C.base().count(k));
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = C.lift(k, s, static_cast<int>(rng.below(static_cast<std::uint64_t>(C.order()))));
  return out;
}

inline std::uint64_t stream(std::size_t item, int tag, int trial) {
  return static_cast<std::uint64_t>(item) * 1000000ULL + static_cast<std::uint64_t>(tag) * 100000ULL + static_cast<std::uint64_t>(trial);
}

}  // namespace detail

/// Runs criteria 1 to 11 on the corpus. Criterion 12 (determinism) needs two
/// runs; see run_acceptance.
inline CorpusResult run_corpus(const CorpusConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  auto seconds_since = [](Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  Table oracle{"oracle", {"item", "class", "k", "beta_spectral", "beta_oracle", "abs_diff", "verdict"}, {}};
  Table deloc{"delocalized", {"item", "class", "class_size", "k", "beta", "gamma", "B", "euler"}, {}};
  Table positivity{"positivity", {"item", "class", "trials", "min_T", "min_margin", "verdict"}, {}};
  Table trace{"trace_property", {"item", "class", "pairs", "max_normalized_defect", "verdict"}, {}};
  Table lift{"lift_independence", {"item", "class", "trials", "max_abs_diff", "verdict"}, {}};
  Table analytic{"analytic_morse", {"item", "class", "s", "t", "k", "mu", "gamma", "lhs", "rhs", "tolerance", "verdict"}, {}};
  Table invariance{"invariance", {"item", "class", "k", "s", "gamma_s", "gamma_0", "abs_diff", "verdict"}, {}};
  Table morse{"morse", {"item", "class", "form", "k", "C_base", "C_total", "gamma", "lhs", "rhs", "verdict"}, {}};
  Table euler{"euler", {"item", "class", "euler_sum", "expected", "abs_diff", "verdict"}, {}};
  Table mckean{"mckean_singer", {"item", "s", "t", "defect", "verdict"}, {}};
  Table oneform{"oneform", {"fixture", "m", "k", "class", "C_k", "beta_e", "beta_g", "gamma", "lhs", "rhs", "slack", "verdict"}, {}};
  Table oneform_trend{"oneform_trend", {"fixture", "m", "max_defect", "defect_bound", "slack_unit", "m_beta_e", "expected_m_beta_e", "verdict"}, {}};
  Table fibration{"fibration", {"fixture", "m", "k", "class", "beta_e", "beta_g", "gamma", "betti_cover", "m_beta_e"}, {}};
  Table fibration_summary{"fibration_summary", {"fixture", "k", "K0", "decay_exponent", "bound_holds", "verdict", "note"}, {}};
  Table failures{"failures", {"criterion", "module", "operation", "instance", "reproduce"}, {}};

  detail::Check c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11;
  double oracle_time = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0, t5 = 0.0, t7 = 0.0, t10 = 0.0, t11 = 0.0;
  const std::string seed_flag = " --seed " + std::to_string(cfg.seed);

  auto fail = [&](int criterion, const std::string& module, const std::string& op, const std::string& instance, const std::string& repro) {
    failures.add({criterion, module, op, instance, "eqhodge " + repro});
  };

  std::vector<double> all_s{0.0};
  for (double s : cfg.s_grid) all_s.push_back(s);
  for (double s : cfg.invariance_s) all_s.push_back(s);
  std::sort(all_s.begin(), all_s.end());
  all_s.erase(std::unique(all_s.begin(), all_s.end()), all_s.end());

  for (std::size_t idx = 0; idx < cfg.items.size(); ++idx) {
    const CorpusItemSpec& spec = cfg.items[idx];
    const std::string label = cover_label(spec.fixture, spec.cover);
    const std::string flags = cover_flags(spec.fixture, spec.cover);
    try {
      const FixtureData fx = load_fixture(spec.fixture);
      const CoverComplex C = make_cover(fx, spec.cover);
      const int n = C.dimension();
      const int id = C.group().identity();
      const auto classes = conjugacy_classes(C.group());
      const ConjugacyClass& e = identity_class(classes, C.group());

      // 1, 8: oracle equivalence and Euler sums.
      auto t0 = Clock::now();
      const CoverHarmonics H = cover_harmonics(C);
      const DelocalizedReport rep = delocalized_report(C, H);
      oracle_time += seconds_since(t0);
      for (const auto& r : rep.rows) {
        const std::string cn = r.class_rep == id ? "e" : std::to_string(r.class_rep);
        const double diff = std::abs(r.beta - r.beta_oracle);
        const bool ok = diff <= rep.oracle_tolerance;
        c1.record(ok, diff);
        oracle.add({label, cn, r.k, r.beta, r.beta_oracle, diff, ok});
        deloc.add({label, cn, r.class_size, r.k, r.beta, r.gamma, r.b_term, r.euler});
        if (!ok) fail(1, "delocalized", "beta_delocalized", label + " class " + cn + " k=" + std::to_string(r.k), "delocalized " + flags);
      }
      for (const auto& c : classes) {
        const std::string cn = detail::class_name(c, id);
        const double sum = euler_delocalized(rep.column(c.representative, &DelocalizedRow::beta));
        const double expected = c.representative == id ? static_cast<double>(C.base().euler_characteristic()) : 0.0;
        const bool ok = std::abs(sum - expected) <= rep.euler_tolerance;
        c8.record(ok, std::abs(sum - expected));
        euler.add({label, cn, sum, expected, std::abs(sum - expected), ok});
        if (!ok) fail(8, "delocalized", "euler_delocalized", label + " class " + cn, "delocalized " + flags);
      }

      // 2: positivity of T_c on QᵀQ.
      t0 = Clock::now();
      std::vector<double> min_t(classes.size(), INFINITY), min_margin(classes.size(), INFINITY);
      for (int trial = 0; trial < cfg.positivity_trials; ++trial) {
        const int k = trial % (n + 1);
        const Eigen::MatrixXd Q = random_equivariant(C, k, derive_seed(cfg.seed, detail::stream(idx, 2, trial)));
        const Eigen::MatrixXd A = Q.transpose() * Q;
        const double te = tr_delocalized(C, k, A, e);
        for (std::size_t ci = 0; ci < classes.size(); ++ci) {
          const double tc = tr_delocalized(C, k, A, classes[ci]);
          const double sz = static_cast<double>(classes[ci].size());
          min_t[ci] = std::min(min_t[ci], te + tc / sz);
          min_margin[ci] = std::min(min_margin[ci], sz * te - std::abs(tc));
        }
      }
      for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const bool ok = min_t[ci] >= -1e-10 && min_margin[ci] >= -1e-10;
        c2.record(ok, std::max(0.0, -std::min(min_t[ci], min_margin[ci])));
        const std::string cn = detail::class_name(classes[ci], id);
        positivity.add({label, cn, cfg.positivity_trials, min_t[ci], min_margin[ci], ok});
        if (!ok) fail(2, "delocalized", "t_trace", label + " class " + cn, "corpus" + seed_flag);
      }
      t2 += seconds_since(t0);

      // 3: trace property.
      t0 = Clock::now();
      std::vector<double> worst_trace(classes.size(), 0.0);
      for (int pair = 0; pair < cfg.trace_pairs; ++pair) {
        const int k = pair % (n + 1);
        const Eigen::MatrixXd A = random_equivariant(C, k, derive_seed(cfg.seed, detail::stream(idx, 3, 2 * pair)));
        const Eigen::MatrixXd B = random_equivariant(C, k, derive_seed(cfg.seed, detail::stream(idx, 3, 2 * pair + 1)));
        const Eigen::MatrixXd AB = A * B, BA = B * A;
        const double scale = 1.0 + A.norm() * B.norm();
        for (std::size_t ci = 0; ci < classes.size(); ++ci)
          worst_trace[ci] = std::max(worst_trace[ci], std::abs(t_trace(C, k, AB, classes[ci]) - t_trace(C, k, BA, classes[ci])) / scale);
      }
      for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const bool ok = worst_trace[ci] <= 1e-10;
        c3.record(ok, worst_trace[ci]);
        const std::string cn = detail::class_name(classes[ci], id);
        trace.add({label, cn, cfg.trace_pairs, worst_trace[ci], ok});
        if (!ok) fail(3, "delocalized", "t_trace", label + " class " + cn, "corpus" + seed_flag);
      }
      t3 += seconds_since(t0);

      // 4: lift independence.
      t0 = Clock::now();
      for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.lift_trials; ++trial) {
          const int k = trial % (n + 1);
          const std::uint64_t seed = derive_seed(cfg.seed, detail::stream(idx, 4, trial * 64 + static_cast<int>(ci)));
          const Eigen::MatrixXd A = random_equivariant(C, k, seed);
          SplitMix64 rng(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
          const double base = tr_delocalized(C, k, A, classes[ci]);
          const double moved = tr_delocalized(C, k, A, classes[ci], detail::random_lifts(C, k, rng));
          worst = std::max(worst, std::abs(base - moved));
        }
        const bool ok = worst < 1e-12;
        c4.record(ok, worst);
        const std::string cn = detail::class_name(classes[ci], id);
        lift.add({label, cn, cfg.lift_trials, worst, ok});
        if (!ok) fail(4, "delocalized", "tr_delocalized", label + " class " + cn, "corpus" + seed_flag);
      }
      t4 += seconds_since(t0);

      // 5, 6, 9: Witten deformation grid.
      t0 = Clock::now();
      std::map<double, CoverHarmonics> deformed;
      for (double s : all_s) deformed.emplace(s, deformed_harmonics(C, DeformationParameters{s, fx.f}, H.betti));
      std::vector<std::vector<double>> gamma0(classes.size());
      for (std::size_t ci = 0; ci < classes.size(); ++ci)
        for (int k = 0; k <= n; ++k) gamma0[ci].push_back(deformed_gamma(C, deformed.at(0.0), k, classes[ci]));
      const long long chi_total = C.total().euler_characteristic();
      for (double s : cfg.s_grid) {
        const CoverHarmonics& D = deformed.at(s);
        for (double t : cfg.t_grid) {
          const double ms = mckean_singer_defect(D.spectra, chi_total, t);
          const bool ms_ok = ms <= 1e-9;
          c9.record(ms_ok, ms);
          mckean.add({label, s, t, ms, ms_ok});
          if (!ms_ok)
            fail(9, "hodge", "mckean_singer_defect", label + " s=" + format_number(s) + " t=" + format_number(t), "witten-sweep " + flags);
          for (std::size_t ci = 0; ci < classes.size(); ++ci) {
            std::vector<double> mus;
            double scale = 0.0;
            for (int k = 0; k <= n; ++k) {
              mus.push_back(mu(C, D, k, classes[ci], t));
              scale += std::abs(mus.back());
            }
            const double tol = 1e-9 * std::max(1.0, scale);
            const MorseVerdict v = verify_analytic_morse(mus, gamma0[ci], n, tol);
            const std::string cn = detail::class_name(classes[ci], id);
            for (int k = 0; k <= n; ++k) {
              const auto uk = static_cast<std::size_t>(k);
              c5.record(v.pass[uk], std::max(0.0, k == n ? std::abs(v.lhs[uk] - v.rhs[uk]) - tol : v.rhs[uk] - v.lhs[uk]));
              analytic.add({label, cn, s, t, k, mus[uk], gamma0[ci][uk], v.lhs[uk], v.rhs[uk], tol, bool(v.pass[uk])});
            }
            if (!v.all_pass())
              fail(5, "witten", "verify_analytic_morse", label + " class " + cn + " s=" + format_number(s) + " t=" + format_number(t),
                   "witten-sweep " + flags);
          }
        }
      }
      for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const std::string cn = detail::class_name(classes[ci], id);
        for (int k = 0; k <= n; ++k)
          for (double s : cfg.invariance_s) {
            const double g = deformed_gamma(C, deformed.at(s), k, classes[ci]);
            const double diff = std::abs(g - gamma0[ci][static_cast<std::size_t>(k)]);
            const bool ok = diff <= 1e-6;
            c6.record(ok, diff);
            invariance.add({label, cn, k, s, g, gamma0[ci][static_cast<std::size_t>(k)], diff, ok});
            if (!ok) fail(6, "witten", "deformed_gamma", label + " class " + cn + " k=" + std::to_string(k) + " s=" + format_number(s), "witten-sweep " + flags);
          }
      }
      t5 += seconds_since(t0);

      // 7: delocalized Morse inequalities for the documented lower-star matching.
      t0 = Clock::now();
      const MorseMatching M = matching_from_vertex_function(C.base(), fx.f);
      const auto counts = require_valid_matching(C.base(), M, "corpus");
      const auto lifted = require_valid_matching(C.total(), lift_matching(C, M), "lift_matching");
      bool lift_ok = true;
      for (std::size_t k = 0; k < counts.size(); ++k) lift_ok = lift_ok && lifted[k] == counts[k] * static_cast<std::size_t>(C.order());
      if (!lift_ok) {
        c7.record(false, 0.0);
        fail(7, "morse", "lift_matching", label + " lifted counts differ from |G|·C", "morse-check " + flags);
      }
      const auto beta_e = rep.column(id, &DelocalizedRow::beta);
      for (const auto& c : classes) {
        const bool trivial = c.representative == id;
        const auto gamma = trivial ? beta_e : rep.column(c.representative, &DelocalizedRow::gamma);
        const MorseVerdict v = verify_delocalized_morse(to_double(counts), gamma, n, 1e-8);
        const std::string cn = detail::class_name(c, id);
        for (int k = 0; k <= n; ++k) {
          const auto uk = static_cast<std::size_t>(k);
          c7.record(v.pass[uk], std::max(0.0, v.rhs[uk] - v.lhs[uk]));
          morse.add({label, cn, trivial ? "beta_e" : "T_c", k, counts[uk], lifted[uk], gamma[uk], v.lhs[uk], v.rhs[uk], bool(v.pass[uk])});
        }
        if (!v.all_pass()) fail(7, "morse", "verify_delocalized_morse", label + " class " + cn, "morse-check " + flags);
      }
      t7 += seconds_since(t0);
    } catch (const Error& err) {
      for (auto* c : {&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8, &c9}) c->record(false, 0.0);
      fail(0, err.module(), err.operation(), label + ": " + err.what(), "info " + flags);
    }
  }

  // 10: closed 1-form inequalities on cyclic covers.
  auto t0 = Clock::now();
  for (const auto& spec : cfg.oneform) {
    std::string mlist;
    for (int m : spec.m_list) mlist += (mlist.empty() ? "" : ",") + std::to_string(m);
    const std::string repro = "oneform-check --fixture " + spec.fixture + " --m-list " + mlist;
    try {
      const FixtureData fx = load_fixture(spec.fixture);
      const ClosedOneCochain w(fx.complex, fx.omega);
      const DelahgarReport rep = verify_delahgar(fx.complex, w, spec.power, spec.m_list);
      for (const auto& r : rep.rows) {
        c10.record(r.pass, std::max(0.0, r.rhs - r.lhs));
        oneform.add({spec.fixture, r.m, r.k, r.class_rep, r.count, r.beta_e, r.beta_g, r.gamma, r.lhs, r.rhs, r.slack, r.pass});
        if (!r.pass) fail(10, "oneform", "verify_delahgar", spec.fixture + " m=" + std::to_string(r.m) + " k=" + std::to_string(r.k), repro);
      }
      for (std::size_t i = 0; i < rep.m_values.size(); ++i) {
        const int m = rep.m_values[i];
        std::string mb, ex;
        bool ok = true;
        for (const auto& r : rep.rows) {
          if (r.m != m) continue;
          const double v = m * r.beta_e;
          mb += (mb.empty() ? "" : ";") + format_number(v);
          if (!spec.expect_m_beta.empty()) {
            const double want = spec.expect_m_beta.at(static_cast<std::size_t>(r.k));
            ok = ok && std::abs(v - want) <= 1e-9;
            ex += (ex.empty() ? "" : ";") + format_number(want);
          }
        }
        if (!spec.expect_m_beta.empty()) {
          // The exact Betti numbers of M_m must agree as well.
          const auto b = betti_numbers(cyclic_cover(fx.complex, w, m).total());
          for (std::size_t k = 0; k < b.size(); ++k) ok = ok && static_cast<double>(b[k]) == spec.expect_m_beta[k];
        }
        c10.record(ok, 0.0);
        oneform_trend.add({spec.fixture, m, rep.max_defect[i], rep.defect_bound, static_cast<double>(rep.defect_bound) / m, mb, ex.empty() ? "-" : ex, ok});
        if (!ok) fail(10, "oneform", "verify_delahgar", spec.fixture + " m=" + std::to_string(m) + " m*beta_e differs from expected", repro);
      }
      const bool slope_ok = std::abs(rep.slack_exponent + 1.0) <= 0.1;
      c10.record(slope_ok, std::abs(rep.slack_exponent + 1.0));
      if (!slope_ok) fail(10, "oneform", "verify_delahgar", spec.fixture + " slack exponent " + format_number(rep.slack_exponent), repro);
    } catch (const Error& err) {
      c10.record(false, 0.0);
      fail(10, err.module(), err.operation(), spec.fixture + ": " + err.what(), repro);
    }
  }
  t10 = seconds_since(t0);

  // 11: fibration trend.
  t0 = Clock::now();
  for (const auto& spec : cfg.fibration) {
    std::string mlist;
    for (int m : spec.m_list) mlist += (mlist.empty() ? "" : ",") + std::to_string(m);
    const std::string repro = "oneform-check --fixture " + spec.fixture + " --m-list " + mlist;
    try {
      const FixtureData fx = load_fixture(spec.fixture);
      const FibrationReport rep = fibration_trend_report(fx.complex, ClosedOneCochain(fx.complex, fx.omega), spec.m_list);
      for (const auto& r : rep.rows)
        fibration.add({spec.fixture, r.m, r.k, r.class_rep, r.beta_e, r.beta_g, r.gamma, r.betti_cover, r.m * r.beta_e});
      for (std::size_t k = 0; k < rep.k0.size(); ++k) {
        const bool exp_ok = !rep.exponent[k] || std::abs(*rep.exponent[k] - 1.0) <= rep.exponent_tolerance;
        const bool ok = exp_ok && rep.bound_holds[k];
        c11.record(ok, rep.exponent[k] ? std::abs(*rep.exponent[k] - 1.0) : 0.0);
        fibration_summary.add({spec.fixture, static_cast<int>(k), rep.k0[k], rep.exponent[k] ? Cell(*rep.exponent[k]) : Cell("vanishes"),
                               bool(rep.bound_holds[k]), ok, FibrationReport::kLabel});
        if (!ok) fail(11, "oneform", "fibration_trend_report", spec.fixture + " k=" + std::to_string(k), repro);
      }
    } catch (const Error& err) {
      c11.record(false, 0.0);
      fail(11, err.module(), err.operation(), spec.fixture + ": " + err.what(), repro);
    }
  }
  t11 = seconds_since(t0);

  const bool oracle_fast = oracle_time <= cfg.oracle_seconds;
  CorpusResult out;
  out.criteria = {
      {1, "oracle equivalence", c1.pass && oracle_fast && c1.count > 0,
       c1.summary("within 1e-8") + (oracle_fast ? "" : "; runtime budget exceeded"), oracle_time},
      {2, "positivity", c2.pass && c2.count > 0, c2.summary("classes nonnegative over all trials"), t2},
      {3, "trace property", c3.pass && c3.count > 0, c3.summary("classes within 1e-10 relative"), t3},
      {4, "lift independence", c4.pass && c4.count > 0, c4.summary("classes below 1e-12"), t4},
      {5, "analytic Morse inequalities", c5.pass && c5.count > 0, c5.summary("inequalities within 1e-9 scale"), t5},
      {6, "s-invariance of gamma", c6.pass && c6.count > 0, c6.summary("values within 1e-6"), t5},
      {7, "delocalized Morse inequalities", c7.pass && c7.count > 0, c7.summary("inequalities within 1e-8"), t7},
      {8, "Euler sums", c8.pass && c8.count > 0, c8.summary("sums within 1e-9"), 0.0},
      {9, "McKean-Singer", c9.pass && c9.count > 0, c9.summary("grid points within 1e-9"), t5},
      {10, "closed 1-form inequalities", c10.pass && c10.count > 0, c10.summary("checks"), t10},
      {11, "fibration trend", c11.pass && c11.count > 0, c11.summary("degrees with 1/m decay"), t11},
  };
  Table summary{"summary", {"criterion", "name", "verdict", "detail"}, {}};
  for (const auto& c : out.criteria) summary.add({c.id, c.name, c.pass, c.detail});
  out.tables = {summary, oracle, deloc, euler, positivity, trace, lift, analytic, mckean, invariance, morse, oneform, oneform_trend, fibration, fibration_summary, failures};
  return out;
}

/// Rendered report files: file name -> contents.
inline std::map<std::string, std::string> render_reports(const CorpusResult& r, const std::string& format) {
  std::map<std::string, std::string> out;
  for (const auto& t : r.tables) out[t.name + (format == "json" ? ".json" : ".csv")] = render(t, format);
  return out;
}

/// Runs the corpus twice and adds criterion 12: both runs render to
/// byte-identical reports. The first run's tables are returned.
inline CorpusResult run_acceptance(const CorpusConfig& cfg, const std::string& format = "csv") {
  const auto t0 = std::chrono::steady_clock::now();
  CorpusResult first = run_corpus(cfg);
  const CorpusResult second = run_corpus(cfg);
  const auto a = render_reports(first, format), b = render_reports(second, format);
  std::vector<std::string> differing;
  for (const auto& [name, text] : a)
    if (!b.count(name) || b.at(name) != text) differing.push_back(name);
  CriterionResult c{12, "determinism", differing.empty() && a.size() == b.size(), "", 0.0};
  c.detail = differing.empty() ? std::to_string(a.size()) + " report files byte-identical across two runs" : "differs: ";
  for (const auto& d : differing) c.detail += d + " ";
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  first.criteria.push_back(c);
  for (auto& t : first.tables)
    if (t.name == "summary") t.add({c.id, c.name, c.pass, c.detail});
  return first;
}

}  // namespace eqhodge
