#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "json_io.hpp"
#include "veronese/approx.hpp"
#include "veronese/classes.hpp"
#include "veronese/counting.hpp"
#include "veronese/errors.hpp"
#include "veronese/experiments.hpp"
#include "veronese/lattice.hpp"
#include "veronese/realexpr.hpp"
#include "veronese/roots.hpp"

namespace veronese::cli {

namespace {

struct Global {
  int threads = 0;
  double budget = 2e10;
  int precision = 12;
  std::string format = "jsonl";
};

/// Raised by an action after its records are written: a check did not hold.
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double target_radius(const Global& g) { return std::pow(10.0, -g.precision); }

json hd_json(const HdValue& hd) {
  return {{"hd4", to_json(hd.fourth_power)}, {"hd", std::pow(to_double(hd.fourth_power), 0.25)}};
}

json minima_json(const MinimaResult& m) {
  json taus = json::array(), values = json::array(), witnesses = json::array();
  const auto v = m.tau_values();
  for (std::size_t i = 0; i < m.taus.size(); ++i) {
    taus.push_back(to_json(m.taus[i]));
    values.push_back(real(v[i]));
    witnesses.push_back(to_json(m.witnesses[i]));
  }
  return {{"taus", taus},
          {"tau_values", values},
          {"witnesses", witnesses},
          {"vol", to_json(m.volume)},
          {"product", real(m.product)},
          {"minkowski_ok", m.minkowski_ok()},
          {"points_examined", m.points_examined}};
}

std::vector<long long> counts(const std::vector<std::string>& texts) {
  std::vector<long long> out;
  for (const auto& t : texts) out.push_back(parse_count(t));
  return out;
}

class Commands {
 public:
  Commands(CLI::App& app, Global& global) : app_(app), g_(global) {}

  void install() {
    poly();
    phi();
    act();
    transport();
    reduce();
    equivalent();
    classes();
    count_nhd();
    count_equivalents();
    box_minima();
    type();
    ortho();
    exponent();
    dual();
    experiment();
  }

  /// The action selected by the parsed subcommand.
  std::function<void(Emitter&)> action;
  /// Set by `experiment`, which writes its own output format.
  std::function<int(std::ostream&)> raw_action;

 private:
  CLI::App* sub(const std::string& name, const std::string& description) {
    auto* s = app_.add_subcommand(name, description);
    s->fallthrough();
    return s;
  }

  void poly() {
    auto* s = sub("poly", "Polynomial invariants");
    static const std::vector<std::string> ops = {"disc", "height", "hd", "roots", "gap", "separation"};
    s->add_option("op", s_.op, "disc | height | hd | roots | gap | separation")
        ->required()
        ->check(CLI::IsMember(ops));
    s->add_option("--coeffs", s_.coeffs, "JSON array c0..cn")->required();
    s->add_option("--eps", s_.eps, "Separation threshold for `separation`");
    s->callback([this] {
      action = [this](Emitter& e) {
        const auto p = parse_poly(s_.coeffs);
        const auto& op = s_.op;
        if (op == "disc") {
          e.emit({{"disc", to_json(discriminant(p))}});
        } else if (op == "height") {
          e.emit({{"height", to_json(height(p))}});
        } else if (op == "hd") {
          e.emit(hd_json(height_d(p)));
        } else if (op == "roots") {
          for (const auto& r : roots(p, target_radius(g_)))
            e.emit({{"re", r.center.real()}, {"im", r.center.imag()}, {"radius", r.radius},
                    {"multiplicity", r.multiplicity}});
        } else if (op == "gap") {
          const auto gap = min_root_gap(p, target_radius(g_));
          e.emit({{"lower", real(gap.lower)}, {"upper", real(gap.upper)}});
        } else {
          if (!(s_.eps > 0)) throw UsageError("separation needs --eps > 0");
          e.emit({{"eps", s_.eps}, {"separated", check_root_separation(p, s_.eps)}});
        }
      };
    });
  }

  void phi() {
    auto* s = sub("phi", "Matrix of phi_n(B)");
    s->add_option("--n", s_.n, "Degree")->required()->check(CLI::Range(0, 64));
    s->add_option("--mat", s_.mat, "[a, b, c, d]")->required();
    s->add_flag("--naive-check", s_.naive_check, "Compare with the binomial-sum formula");
    s->callback([this] {
      action = [this](Emitter& e) {
        const auto B = parse_mat(s_.mat);
        const auto m = veronese::phi(s_.n, B);
        e.emit({{"phi", to_json(m)}});
        if (s_.naive_check && !(m == phi_binomial_sum(s_.n, B)))
          throw CheckFailed("phi differs from the binomial-sum formula");
      };
    });
  }

  void act() {
    auto* s = sub("act", "(cx+d)^n P((ax+b)/(cx+d))");
    s->add_option("--mat", s_.mat, "[a, b, c, d]")->required();
    s->add_option("--coeffs", s_.coeffs, "JSON array c0..cn")->required();
    s->add_option("--n", s_.n, "Form degree (default: polynomial degree)");
    s->callback([this] {
      action = [this](Emitter& e) {
        const auto p = parse_poly(s_.coeffs);
        const int n = s_.n >= 0 ? s_.n : std::max(p.degree(), 0);
        e.emit({{"poly", to_json(mobius_act_poly(parse_mat(s_.mat), p, n))}});
      };
    });
  }

  void transport() {
    auto* s = sub("transport", "Transport approximations through phi_n(B)");
    s->add_option("--mat", s_.mat, "[a, b, c, d]")->required();
    auto* p = s->add_option("--p", s_.vec, "Single vector (p0, ..., pn)");
    auto* x = s->add_option("--x", s_.x, "Real point; sweeps its best approximations");
    s->add_option("--n", s_.n, "Dimension with --x");
    s->add_option("--qmax", s_.qmax, "Largest q0 with --x");
    s->add_option("--constant", s_.constant, "Bound on the error ratio with --x");
    p->excludes(x);
    s->callback([this] {
      action = [this](Emitter& e) {
        const auto B = parse_mat(s_.mat);
        if (!s_.vec.empty()) {
          e.emit({{"q", to_json(transport_approx(B, parse_int_vector(s_.vec)))}});
          return;
        }
        if (s_.x.empty() || s_.n < 1) throw UsageError("transport needs --p, or --x with --n >= 1");
        const auto report = check_transport(RealExpr::parse(s_.x), B, s_.n, parse_count(s_.qmax), s_.constant);
        for (const auto& r : report.rows)
          e.emit({{"kind", "row"}, {"p", to_json(r.p)}, {"q", to_json(r.q)}, {"err_p", real(r.err_p)},
                  {"err_q", real(r.err_q)}, {"error_ratio", real(r.error_ratio)},
                  {"height_ratio", real(r.height_ratio)}});
        e.emit({{"kind", "summary"}, {"max_error_ratio", real(report.max_error_ratio)},
                {"max_height_ratio", real(report.max_height_ratio)}, {"constant", report.constant},
                {"passed", report.passed}});
        if (!report.passed) throw CheckFailed("transport ratio exceeds the constant");
      };
    });
  }

  void reduce() {
    auto* s = sub("reduce", "Minimal H_d representative of a cubic form");
    s->add_option("--coeffs", s_.coeffs, "JSON array c0..c3")->required();
    s->add_option("--depth", s_.depth, "Plateau search depth")->check(CLI::Range(0, 64));
    s->callback([this] {
      action = [this](Emitter& e) {
        const auto r = reduce_min_hd(parse_poly(s_.coeffs), s_.depth);
        json rec = {{"representative", to_json(r.representative)},
                    {"witness", to_json(r.witness)},
                    {"plateau_size", r.plateau_size}};
        rec.update(hd_json(r.hd));
        e.emit(rec);
      };
    });
  }

  void equivalent() {
    auto* s = sub("equivalent", "GL2(Z) equivalence of two cubic forms");
    s->add_option("--p", s_.coeffs, "First form")->required();
    s->add_option("--q", s_.vec, "Second form")->required();
    s->add_option("--entry-bound", s_.entry_bound, "Witness search bound")->check(CLI::Range(1, 1000));
    s->callback([this] {
      action = [this](Emitter& e) {
        const auto r = veronese::equivalent(parse_poly(s_.coeffs), parse_poly(s_.vec), s_.entry_bound);
        json rec = {{"verdict", to_string(r.verdict)}, {"reason", r.reason}};
        if (r.verdict == Verdict::equivalent) rec["witness"] = to_json(r.witness);
        e.emit(rec);
      };
    });
  }

  void classes() {
    auto* s = sub("classes", "Classes of cubics up to a height and discriminant");
    s->add_option("--height", s_.height, "Height cap")->required();
    s->add_option("--disc", s_.disc, "Discriminant cap")->required();
    s->add_option("--depth", s_.depth, "Plateau search depth")->check(CLI::Range(0, 64));
    s->add_option("--entry-bound", s_.entry_bound, "Witness search bound")->check(CLI::Range(1, 1000));
    s->callback([this] {
      action = [this](Emitter& e) {
        ClassOptions options;
        options.threads = g_.threads;
        options.budget = g_.budget;
        options.depth = s_.depth;
        options.entry_bound = s_.entry_bound;
        const auto census = enumerate_classes(static_cast<int>(parse_count(s_.height)),
                                              parse_count(s_.disc.front()), options);
        for (const auto& c : census.classes)
          e.emit({{"kind", "class"}, {"canonical", to_json(c.canonical)}, {"disc", to_json(c.discriminant)},
                  {"members_found", c.members_found}});
        json histogram = json::object();
        for (const auto& [d, h] : census.histogram) histogram[std::to_string(d)] = h;
        e.emit({{"kind", "summary"}, {"total", total_classes(census)}, {"unresolved_pairs", census.unresolved_pairs},
                {"histogram", histogram}});
      };
    });
  }

  void count_nhd() {
    auto* s = sub("count-nhd", "Count cubics with H <= height and 0 < |D| <= disc");
    s->add_option("--height", s_.heights, "One or more heights")->required();
    s->add_option("--disc", s_.disc, "One or more discriminant caps")->required();
    s->add_flag("--naive-check", s_.naive_check, "Compare with the four-loop count");
    s->add_flag("--fit", s_.fit, "Append the exponent fit over all records");
    s->callback([this] {
      action = [this](Emitter& e) {
        CountOptions options;
        options.threads = g_.threads;
        options.budget = g_.budget;
        const auto caps = counts(s_.disc);
        std::vector<CountRecord> all;
        bool mismatch = false;
        for (long long h : counts(s_.heights)) {
          const auto records = count_nhd_grid(h, caps, options);
          std::vector<CountRecord> naive;
          if (s_.naive_check) naive = count_nhd_naive(h, caps, options);
          for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            json rec = {{"kind", "count"}, {"height", r.height}, {"disc_cap", r.disc_cap}, {"count", r.count}};
            if (s_.naive_check) {
              rec["naive"] = naive[i].count;
              mismatch |= naive[i].count != r.count;
            }
            e.emit(rec);
            all.push_back(r);
          }
        }
        if (s_.fit) {
          const auto fit = fit_exponents(all);
          e.emit({{"kind", "fit"}, {"alpha_h", fit.alpha_h}, {"alpha_d", fit.alpha_d}, {"constant", fit.constant}});
        }
        if (mismatch) throw CheckFailed("count differs from the naive count");
      };
    });
  }

  void count_equivalents() {
    auto* s = sub("count-equivalents", "Count cubics equivalent to a form up to a height");
    s->add_option("--coeffs", s_.coeffs, "JSON array c0..c3")->required();
    s->add_option("--height", s_.height, "Height cap")->required();
    s->callback([this] {
      action = [this](Emitter& e) {
        CountOptions options;
        options.threads = g_.threads;
        options.budget = g_.budget;
        const auto c = veronese::count_equivalents(parse_poly(s_.coeffs), parse_count(s_.height), options);
        e.emit({{"confirmed", c.confirmed}, {"unknown", c.unknown}, {"rejected", c.rejected},
                {"final_entry_bound", c.final_entry_bound}, {"exact", c.exact()}});
      };
    });
  }

  void box_minima() {
    auto* s = sub("box-minima", "Successive minima of a Veronese box");
    s->add_option("--n", s_.n, "Degree")->required()->check(CLI::Range(1, 8));
    s->add_option("--x0", s_.x0, "Rational centre p/q")->required();
    s->add_option("--scale", s_.scale, "Scale Q")->required();
    s->add_option("--lambda", s_.lambda, "Exponent in (0, 1]")->required();
    s->add_option("--dilation-cap", s_.dilation_cap, "Largest dilation searched");
    s->callback([this] {
      action = [this](Emitter& e) {
        BoxSpec spec;
        spec.n = s_.n;
        spec.x0 = parse_fraction(s_.x0);
        spec.Q = parse_fraction(s_.scale);
        spec.lambda = parse_fraction(s_.lambda);
        MinimaOptions options;
        options.budget = std::min(g_.budget, 1e15);
        MinimaResult m;
        try {
          m = successive_minima(spec, parse_fraction(s_.dilation_cap), options);
        } catch (const MinimaIncomplete& ex) {
          json rec = minima_json(ex.partial());
          rec["complete"] = false;
          e.emit(rec);
          throw;
        }
        json rec = minima_json(m);
        rec["complete"] = true;
        e.emit(rec);
        if (!m.minkowski_ok()) throw CheckFailed("Minkowski bounds violated");
      };
    });
  }

  void type() {
    auto* s = sub("type", "Hankel type of an integer vector");
    s->add_option("--q", s_.vec, "JSON array q0..qn")->required();
    s->callback([this] {
      action = [this](Emitter& e) {
        const auto t = type_of(parse_int_vector(s_.vec));
        e.emit({{"type", t.type}, {"ranks", t.ranks}, {"monotone", t.monotone}});
      };
    });
  }

  void ortho() {
    auto* s = sub("ortho", "Small integer vector orthogonal to q");
    s->add_option("--q", s_.vec, "JSON array q0..qn")->required();
    s->add_option("--slack", s_.slack, "Initial search bound over ||q||^(1/n)");
    s->callback([this] {
      action = [this](Emitter& e) {
        const auto o = small_orthogonal_vector(parse_int_vector(s_.vec), s_.slack, g_.budget);
        e.emit({{"a", to_json(o.a)}, {"slack_used", o.slack_used}});
      };
    });
  }

  void exponent() {
    auto* s = sub("exponent", "Best simultaneous approximations and lambda estimate");
    s->add_option("--x", s_.x, "Real point, e.g. \"sqrt(2)\"")->required();
    s->add_option("--n", s_.n, "Dimension")->required()->check(CLI::Range(1, 16));
    s->add_option("--qmax", s_.qmax, "Largest q0")->required();
    s->callback([this] {
      action = [this](Emitter& e) {
        const auto q_max = parse_count(s_.qmax);
        const auto records = best_approx_seq(RealExpr::parse(s_.x), s_.n, q_max);
        for (const auto& r : records)
          e.emit({{"kind", "record"}, {"q", to_json(r.q)}, {"err", real(r.err)},
                  {"effective_exponent", real(r.effective_exponent)}, {"exact_hit", r.exact_hit}});
        const auto est = estimate_lambda(records, q_max);
        e.emit({{"kind", "estimate"}, {"lambda", real(est.lambda)}, {"tail_max", real(est.tail_max)},
                {"tail_records", est.tail_records}, {"rational_hit", est.rational_hit}});
      };
    });
  }

  void dual() {
    auto* s = sub("dual", "Small values of integer polynomials at x");
    s->add_option("--x", s_.x, "Real point")->required();
    s->add_option("--n", s_.n, "Degree")->required()->check(CLI::Range(1, 16));
    s->add_option("--amax", s_.qmax, "Largest coefficient")->required();
    s->callback([this] {
      action = [this](Emitter& e) {
        for (const auto& r : dual_best(RealExpr::parse(s_.x), s_.n, parse_count(s_.qmax), g_.budget))
          e.emit({{"a", to_json(r.a)}, {"value", real(r.value)},
                  {"effective_exponent", real(r.effective_exponent)}, {"algebraic_hit", r.algebraic_hit}});
      };
    });
  }

  void experiment() {
    auto* s = sub("experiment", "Manifest-driven experiments");
    s->require_subcommand(1);
    auto* run = s->add_subcommand("run", "Run one experiment");
    run->fallthrough();
    run->add_option("name", s_.name, "Experiment name")->required();
    run->add_option("--manifest", s_.manifest, "Manifest JSON file")->required();
    run->add_option("--output", s_.output, "Report path prefix (overrides output_path)");
    auto* list = s->add_subcommand("list", "List experiment names");
    list->callback([this] {
      action = [](Emitter& e) {
        for (const auto& name : experiment_names()) e.emit({{"name", name}});
      };
    });
    run->callback([this] {
      raw_action = [this](std::ostream& out) {
        auto manifest = load_manifest(s_.manifest);
        if (manifest.name != s_.name)
          throw UsageError("manifest is for '" + manifest.name + "', not '" + s_.name + "'");
        if (!s_.output.empty()) manifest.output_path = s_.output;
        RunOptions options;
        options.threads = g_.threads;
        options.budget = g_.budget;
        const auto report = run_experiment(manifest, options);
        out << (g_.format == "csv" ? report.summary_csv() : report.jsonl());
        out.flush();
        if (!manifest.output_path.empty()) write_report(report, manifest.output_path);
        return report.passed() ? 0 : 1;
      };
    });
  }

  struct State {
    std::string op, coeffs, mat, vec, x, qmax = "1e6", x0, scale, lambda, height, name, manifest, output;
    std::string dilation_cap = "1073741824";
    std::vector<std::string> heights, disc;
    int n = -1;
    int depth = 6;
    int entry_bound = 8;
    double eps = 0.0;
    double constant = 50.0;
    double slack = 1.0;
    bool naive_check = false;
    bool fit = false;
  };

  CLI::App& app_;
  Global& g_;
  State s_;
};

void apply_environment(Global& g) {
  if (const char* env = std::getenv("VERONESE_THREADS"); env && *env) {
    const auto t = parse_count(env);
    if (t > 4096) throw UsageError("VERONESE_THREADS out of range");
    g.threads = static_cast<int>(t);
  }
}

std::string help_for(const CLI::App& app) {
  const CLI::App* current = &app;
  while (!current->get_subcommands().empty()) current = current->get_subcommands().front();
  return current->help();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact arithmetic for the Veronese curve, GL2(Z) classes of cubics and Diophantine exponents",
               "veronese"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--threads", g.threads, "Worker threads (0: all cores); VERONESE_THREADS overrides")
      ->check(CLI::Range(0, 4096));
  app.add_option("--budget", g.budget, "Largest enumeration cost accepted")->check(CLI::PositiveNumber);
  app.add_option("--precision", g.precision, "Certified digits for roots and gaps")->check(CLI::Range(1, 300));
  app.add_option("--format", g.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));

  Commands commands(app, g);
  commands.install();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << help_for(app);
    return 2;
  }

  Emitter emitter(out, g.format == "csv" ? Format::csv : Format::jsonl);
  try {
    apply_environment(g);
    if (commands.raw_action) return commands.raw_action(out);
    commands.action(emitter);
    emitter.finish();
    return 0;
  } catch (const CheckFailed& e) {
    emitter.finish();
    err << "check failed: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << help_for(app);
    return 2;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n\n" << help_for(app);
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (raise --budget)\n";
    return 2;
  } catch (const std::exception& e) {
    emitter.finish();
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace veronese::cli
