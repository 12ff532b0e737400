// eqhodge command-line front end.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "eqhodge/corpus.hpp"

using namespace eqhodge;

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string fixture;
  std::string cover = "trivial";
  int m = 2;
  std::string class_selector = "all";
  std::vector<double> s_grid{0.0, 1.0, 2.0};
  std::vector<double> t_grid{0.5, 1.0, 2.0};
  std::vector<int> m_list{2, 3, 4, 5, 6};
  double tol = 0.0;  // 0: subcommand default
  std::string format = "csv";
  std::uint64_t seed = kDefaultSeed;
  std::string out = "eqhodge_report";
  std::string matching;
  bool quiet = false;
};

std::string command_line;  // for reproduction hints

struct Failure {
  std::string module, operation, instance;
};

/// Merges every --input object (later keys win), or loads --fixture.
FixtureData load_input(const Options& o) {
  if (!o.inputs.empty() && !o.fixture.empty()) throw Error("cli", "run", "use either --input or --fixture, not both");
  if (o.inputs.empty() && o.fixture.empty()) throw Error("cli", "run", "one of --input or --fixture is required");
  if (!o.fixture.empty()) return load_fixture(o.fixture);
  Json merged = Json::object();
  for (const auto& p : o.inputs) {
    const Json j = read_json_file(p);
    if (!j.is_object()) throw Error("cli", "validate", p + ": expected a JSON object");
    for (const auto& [k, v] : j.items()) merged[k] = v;
  }
  return fixture_from_json(merged, o.inputs.front());
}

std::string source_name(const Options& o) { return o.fixture.empty() ? std::filesystem::path(o.inputs.front()).stem().string() : o.fixture; }

std::vector<ConjugacyClass> selected_classes(const CoverComplex& C, const std::string& selector) {
  auto classes = conjugacy_classes(C.group());
  if (selector == "all") return classes;
  int g = 0;
  try {
    std::size_t used = 0;
    g = std::stoi(selector, &used);
    if (used != selector.size()) throw std::invalid_argument(selector);
  } catch (const std::exception&) {
    throw Error("cli", "run", "--class expects a group element index or 'all'");
  }
  if (!C.group().contains(g)) throw Error("cli", "run", "--class " + selector + " is not an element of the group");
  return {class_of(classes, g)};
}

std::string class_label(const ConjugacyClass& c, const FiniteGroup& G) {
  return c.representative == G.identity() ? "e" : std::to_string(c.representative);
}

void emit(const std::vector<Table>& tables, const Options& o) {
  for (const auto& t : tables) {
    write_table(t, o.out, o.format);
    if (!o.quiet) std::cout << "# " << t.name << "\n" << render(t, o.format);
  }
}

int finish(const std::vector<Failure>& failures) {
  for (const auto& f : failures)
    std::cerr << "FAIL " << f.module << "::" << f.operation << ": " << f.instance << "\n  reproduce: " << command_line << "\n";
  return failures.empty() ? 0 : 1;
}

std::string joined(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ";") + std::to_string(x);
  return s;
}

int run_info(const Options& o) {
  const FixtureData d = load_input(o);
  Table t{"info", {"space", "name", "dimension", "f_vector", "euler", "group_order", "components"}, {}};
  auto add = [&](const std::string& space, const SimplicialComplex& K, int order) {
    std::vector<std::size_t> fv;
    for (int k = 0; k <= K.dimension(); ++k) fv.push_back(K.count(k));
    t.add({space, d.name, K.dimension(), joined(fv), static_cast<long long>(K.euler_characteristic()), order, betti_exact(K, 0)});
  };
  add("base", d.complex, 1);
  if (o.cover != "trivial") {
    const CoverComplex C = make_cover(d, {o.cover, o.m});
    add("total", C.total(), C.order());
  }
  emit({t}, o);
  return 0;
}

int run_betti(const Options& o) {
  const FixtureData d = load_input(o);
  Table t{"betti", {"space", "k", "exact", "spectral", "needs_review", "verdict"}, {}};
  std::vector<Failure> failures;
  auto add = [&](const std::string& space, const SimplicialComplex& K) {
    for (int k = 0; k <= K.dimension(); ++k) {
      const std::size_t exact = betti_exact(K, k);
      const SpectralPackage s = spectrum(laplacian(K, k), k);
      const std::size_t spectral = harmonic_projector(s).rank;
      t.add({space, k, exact, spectral, s.needs_review ? "yes" : "no", exact == spectral});
      if (exact != spectral) failures.push_back({"hodge", "harmonic_projector", space + " k=" + std::to_string(k)});
    }
  };
  add("base", d.complex);
  if (o.cover != "trivial") add("total", make_cover(d, {o.cover, o.m}).total());
  emit({t}, o);
  return finish(failures);
}

int run_delocalized(const Options& o) {
  const FixtureData d = load_input(o);
  const CoverComplex C = make_cover(d, {o.cover, o.m});
  DelocalizedReport rep = delocalized_report(C);
  if (o.tol > 0) rep.oracle_tolerance = o.tol;
  const auto wanted = selected_classes(C, o.class_selector);
  Table t{"delocalized", {"class", "class_size", "k", "beta", "gamma", "B", "euler", "beta_oracle", "verdict"}, {}};
  std::vector<Failure> failures;
  const int id = C.group().identity();
  for (const auto& c : wanted) {
    const double expected = c.representative == id ? static_cast<double>(d.complex.euler_characteristic()) : 0.0;
    for (const auto& r : rep.rows) {
      if (r.class_rep != c.representative) continue;
      const bool ok = std::abs(r.beta - r.beta_oracle) <= rep.oracle_tolerance && std::abs(r.euler - expected) <= rep.euler_tolerance;
      t.add({class_label(c, C.group()), r.class_size, r.k, r.beta, r.gamma, r.b_term, r.euler, r.beta_oracle, ok});
      if (!ok) failures.push_back({"delocalized", "delocalized_report", "class " + class_label(c, C.group()) + " k=" + std::to_string(r.k)});
    }
  }
  emit({t}, o);
  if (rep.needs_review) std::cerr << "note: an eigenvalue lies within a factor 10 of the zero threshold\n";
  return finish(failures);
}

int run_witten(const Options& o) {
  const FixtureData d = load_input(o);
  const CoverComplex C = make_cover(d, {o.cover, o.m});
  const int n = C.dimension();
  const auto betti = betti_numbers(C.total());
  const auto wanted = selected_classes(C, o.class_selector);
  const CoverHarmonics H0 = deformed_harmonics(C, {0.0, d.f}, betti);
  Table grid{"witten_sweep", {"class", "s", "t", "k", "mu", "gamma_s", "gamma_0", "lhs", "rhs", "tolerance", "verdict"}, {}};
  Table ms{"mckean_singer", {"s", "t", "defect", "verdict"}, {}};
  std::vector<Failure> failures;
  for (double s : o.s_grid) {
    const CoverHarmonics H = deformed_harmonics(C, {s, d.f}, betti);
    for (double t : o.t_grid) {
      const double defect = mckean_singer_defect(H.spectra, C.total().euler_characteristic(), t);
      const bool ms_ok = defect <= (o.tol > 0 ? o.tol : 1e-9);
      ms.add({s, t, defect, ms_ok});
      if (!ms_ok) failures.push_back({"hodge", "mckean_singer_defect", "s=" + format_number(s) + " t=" + format_number(t)});
      for (const auto& c : wanted) {
        std::vector<double> mus, g0, gs;
        double scale = 0.0;
        for (int k = 0; k <= n; ++k) {
          mus.push_back(mu(C, H, k, c, t));
          scale += std::abs(mus.back());
          g0.push_back(deformed_gamma(C, H0, k, c));
          gs.push_back(deformed_gamma(C, H, k, c));
        }
        const double tol = (o.tol > 0 ? o.tol : 1e-9) * std::max(1.0, scale);
        const MorseVerdict v = verify_analytic_morse(mus, g0, n, tol);
        for (int k = 0; k <= n; ++k) {
          const auto uk = static_cast<std::size_t>(k);
          const bool ok = v.pass[uk] && std::abs(gs[uk] - g0[uk]) <= 1e-6;
          grid.add({class_label(c, C.group()), s, t, k, mus[uk], gs[uk], g0[uk], v.lhs[uk], v.rhs[uk], tol, ok});
          if (!ok)
            failures.push_back({"witten", "verify_analytic_morse",
                                "class " + class_label(c, C.group()) + " s=" + format_number(s) + " t=" + format_number(t) + " k=" + std::to_string(k)});
        }
      }
    }
  }
  emit({grid, ms}, o);
  return finish(failures);
}

int run_morse(const Options& o) {
  const FixtureData d = load_input(o);
  const CoverComplex C = make_cover(d, {o.cover, o.m});
  const int n = C.dimension();
  const MorseMatching M = o.matching.empty() ? matching_from_vertex_function(d.complex, d.f) : matching_from_json(read_json_file(o.matching), o.matching);
  const MatchingVerdict mv = validate_matching(d.complex, M);
  Table val{"matching", {"valid", "problem", "witness", "critical_counts"}, {}};
  std::string witness;
  for (const auto& s : mv.witness) witness += (witness.empty() ? "" : " -> ") + detail::format_simplex(s);
  val.add({mv.valid, mv.problem.empty() ? "-" : mv.problem, witness.empty() ? "-" : witness, joined(mv.critical_counts)});
  std::vector<Failure> failures;
  Table t{"morse", {"class", "form", "k", "C", "gamma", "lhs", "rhs", "verdict"}, {}};
  if (!mv.valid) {
    failures.push_back({"morse", "validate_matching", mv.problem + (witness.empty() ? "" : ": " + witness)});
  } else {
    const CoverHarmonics H = cover_harmonics(C);
    const DelocalizedReport rep = delocalized_report(C, H);
    const int id = C.group().identity();
    for (const auto& c : selected_classes(C, o.class_selector)) {
      const bool trivial = c.representative == id;
      const auto gamma = rep.column(c.representative, trivial ? &DelocalizedRow::beta : &DelocalizedRow::gamma);
      const MorseVerdict v = verify_delocalized_morse(to_double(mv.critical_counts), gamma, n, o.tol > 0 ? o.tol : 1e-8);
      for (int k = 0; k <= n; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        t.add({class_label(c, C.group()), trivial ? "beta_e" : "T_c", k, mv.critical_counts[uk], gamma[uk], v.lhs[uk], v.rhs[uk], bool(v.pass[uk])});
      }
      if (!v.all_pass()) failures.push_back({"morse", "verify_delocalized_morse", "class " + class_label(c, C.group())});
    }
  }
  emit({val, t}, o);
  return finish(failures);
}

int run_oneform(const Options& o) {
  const FixtureData d = load_input(o);
  if (!d.has_omega) throw Error("oneform", "periods", "input has no \"omega\" 1-cochain");
  const ClosedOneCochain w(d.complex, d.omega);
  int power = 1;
  if (o.class_selector != "all") power = std::stoi(o.class_selector);
  const PeriodData pd = periods(d.complex, w);
  Table per{"periods", {"cycle", "period"}, {}};
  for (std::size_t i = 0; i < pd.periods.size(); ++i) per.add({static_cast<int>(i), pd.periods[i]});
  for (std::size_t i = 0; i < d.loops.size(); ++i)
    per.add({"loop" + std::to_string(i), evaluate_on_chain(w, loop_chain(d.complex, d.loops[i]))});
  std::vector<Failure> failures;
  std::vector<Table> tables{per};
  if (!pd.integer_valued) {
    failures.push_back({"oneform", "cyclic_cover", "periods are not integers"});
    emit(tables, o);
    return finish(failures);
  }
  const DelahgarReport rep = verify_delahgar(d.complex, w, power, o.m_list, std::nullopt, o.tol > 0 ? o.tol : 1e-8);
  Table t{"oneform", {"m", "k", "class", "C_k", "beta_e", "beta_g", "gamma", "lhs", "rhs", "slack", "verdict"}, {}};
  for (const auto& r : rep.rows) {
    t.add({r.m, r.k, r.class_rep, r.count, r.beta_e, r.beta_g, r.gamma, r.lhs, r.rhs, r.slack, r.pass});
    if (!r.pass) failures.push_back({"oneform", "verify_delahgar", "m=" + std::to_string(r.m) + " k=" + std::to_string(r.k)});
  }
  Table trend{"oneform_trend", {"m", "max_defect", "defect_bound", "slack_unit", "exact_form", "slack_exponent"}, {}};
  for (std::size_t i = 0; i < rep.m_values.size(); ++i)
    trend.add({rep.m_values[i], rep.max_defect[i], rep.defect_bound, static_cast<double>(rep.defect_bound) / rep.m_values[i], rep.exact_form ? "yes" : "no",
               rep.slack_exponent});
  const FibrationReport fr = fibration_trend_report(d.complex, w, o.m_list);
  Table fib{"fibration", {"m", "k", "class", "beta_e", "beta_g", "gamma", "betti_cover", "m_beta_e", "note"}, {}};
  for (const auto& r : fr.rows) fib.add({r.m, r.k, r.class_rep, r.beta_e, r.beta_g, r.gamma, r.betti_cover, r.m * r.beta_e, FibrationReport::kLabel});
  Table fs{"fibration_summary", {"k", "K0", "decay_exponent", "bound_holds", "verdict"}, {}};
  for (std::size_t k = 0; k < fr.k0.size(); ++k) {
    const bool ok = fr.bound_holds[k] && (!fr.exponent[k] || std::abs(*fr.exponent[k] - 1.0) <= fr.exponent_tolerance);
    fs.add({static_cast<int>(k), fr.k0[k], fr.exponent[k] ? Cell(*fr.exponent[k]) : Cell("vanishes"), bool(fr.bound_holds[k]), ok});
    if (!ok) failures.push_back({"oneform", "fibration_trend_report", "k=" + std::to_string(k)});
  }
  tables.insert(tables.end(), {t, trend, fib, fs});
  emit(tables, o);
  return finish(failures);
}

int run_corpus_cmd(const Options& o, const CLI::App& sub) {
  CorpusConfig cfg = load_corpus_config();
  cfg.seed = o.seed;
  if (sub.count("--s-grid")) cfg.s_grid = o.s_grid;
  if (sub.count("--t-grid")) cfg.t_grid = o.t_grid;
  if (sub.count("--m-list"))
    for (auto* list : {&cfg.oneform, &cfg.fibration})
      for (auto& s : *list) s.m_list = o.m_list;
  const CorpusResult r = run_acceptance(cfg, o.format);
  std::filesystem::create_directories(o.out);
  for (const auto& [name, text] : render_reports(r, o.format)) {
    std::ofstream f(std::filesystem::path(o.out) / name, std::ios::binary);
    f << text;
  }
  for (const auto& c : r.criteria)
    std::cout << (c.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << c.detail << "\n";
  const Table& failures = r.table("failures");
  for (const auto& row : failures.rows)
    std::cerr << "FAIL " << row[1].text() << "::" << row[2].text() << ": " << row[3].text() << "\n  reproduce: " << row[4].text() << "\n";
  std::cout << "reports written to " << o.out << "\n";
  return r.all_pass() ? 0 : 1;
}

int run_export(const Options& o) {
  const std::filesystem::path dir = o.out;
  std::filesystem::create_directories(dir);
  for (const char* name : {"cycle3", "rp2", "torus", "klein_bottle", "figure_eight_s3"}) {
    FixtureData d = builtin_fixture(std::string(name) == "cycle3" ? "cycle(3)" : name);
    std::ofstream(dir / (std::string(name) + ".json")) << fixture_to_json(d).dump(2) << "\n";
  }
  std::ofstream(dir / "corpus.json") << corpus_config_to_json(default_corpus_config()).dump(2) << "\n";
  std::cout << "fixtures written to " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(i ? argv[i] : "eqhodge");

  CLI::App app{"eqhodge: delocalized Betti numbers and Morse inequalities on finite covers"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--input", o.inputs, "JSON input file(s); objects are merged, later keys win")->check(CLI::ExistingFile);
    s->add_option("--fixture", o.fixture, "fixture name: a file stem in the fixture directory or a builtin such as cycle(5)");
    s->add_option("--cover", o.cover, "cover to build")->check(CLI::IsMember({"trivial", "orientation", "omega", "voltage"}));
    s->add_option("--m", o.m, "number of sheets for --cover omega")->check(CLI::PositiveNumber);
    s->add_option("--class", o.class_selector, "group element whose class is reported, or 'all'");
    s->add_option("--tol", o.tol, "tolerance override")->check(CLI::PositiveNumber);
    s->add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--out", o.out, "report directory");
    s->add_flag("--quiet", o.quiet, "do not echo reports to stdout");
  };
  auto grids = [&](CLI::App* s) {
    s->add_option("--s-grid", o.s_grid, "deformation parameters")->delimiter(',')->check(CLI::NonNegativeNumber);
    s->add_option("--t-grid", o.t_grid, "heat times")->delimiter(',')->check(CLI::PositiveNumber);
  };

  auto* info = app.add_subcommand("info", "complex summary");
  auto* betti = app.add_subcommand("betti", "exact and spectral Betti numbers");
  auto* deloc = app.add_subcommand("delocalized", "delocalized Betti numbers, gamma, B and Euler sums per class");
  auto* witten = app.add_subcommand("witten-sweep", "heat traces of the deformed Laplacian and analytic Morse verdicts");
  auto* morse = app.add_subcommand("morse-check", "matching validation and delocalized Morse verdicts");
  auto* oneform = app.add_subcommand("oneform-check", "closed 1-form inequalities on cyclic covers and the fibration trend");
  auto* corpus = app.add_subcommand("corpus", "full acceptance suite");
  auto* exportf = app.add_subcommand("export-fixtures", "write the builtin fixtures and corpus as JSON");
  for (auto* s : {info, betti, deloc, witten, morse, oneform}) add_common(s);
  grids(witten);
  morse->add_option("--matching", o.matching, "matching JSON {\"pairs\": ...}; default: lower-star matching of f")->check(CLI::ExistingFile);
  oneform->add_option("--m-list", o.m_list, "cover sizes")->delimiter(',')->check(CLI::Range(1, 64));
  grids(corpus);
  corpus->add_option("--m-list", o.m_list, "cover sizes for the 1-form checks")->delimiter(',')->check(CLI::Range(2, 64));
  corpus->add_option("--seed", o.seed, "seed for random trials");
  corpus->add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  corpus->add_option("--out", o.out, "report directory");
  exportf->add_option("--out", o.out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*info) return run_info(o);
    if (*betti) return run_betti(o);
    if (*deloc) return run_delocalized(o);
    if (*witten) return run_witten(o);
    if (*morse) return run_morse(o);
    if (*oneform) return run_oneform(o);
    if (*corpus) return run_corpus_cmd(o, *corpus);
    if (*exportf) return run_export(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n  reproduce: " << command_line << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: cli::run: " << e.what() << "\n  reproduce: " << command_line << "\n";
    return 2;
  }
  return 2;
}
