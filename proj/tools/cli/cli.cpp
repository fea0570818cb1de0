#include "cli.hpp"

#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tatecalc/catalog.hpp"
#include "tatecalc/hopf.hpp"
#include "tatecalc/realization.hpp"
#include "tatecalc/spectral.hpp"

namespace tatecalc::cli {

namespace {

constexpr long kDefaultMaxWeight = 10;

struct Options {
  std::optional<int> n;
  std::optional<int> m;
  std::string sig;
  std::optional<long> max_weight;
  std::string format = "table";
  std::string variant = "full";
  std::string svg;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

int need_n(const Options& o, int min_value) {
  if (!o.n)
    throw UsageError("--n is required");
  if (*o.n < min_value)
    throw UsageError("--n must be at least " + std::to_string(min_value) + ", got " + std::to_string(*o.n));
  return *o.n;
}

int need_m(const Options& o, int max_value) {
  if (!o.m)
    throw UsageError("--m is required");
  if (*o.m < 0 || *o.m > max_value)
    throw UsageError("--m must satisfy 0 <= m <= " + std::to_string(max_value) + ", got " +
                     std::to_string(*o.m));
  return *o.m;
}

catalog::Signature need_sig(const Options& o, std::size_t min_len = 1) {
  if (o.sig.empty())
    throw UsageError("--sig is required");
  try {
    auto sig = catalog::Signature::parse(o.sig);
    if (sig.size() < min_len)
      throw UsageError("--sig needs at least " + std::to_string(min_len) + " entries, got " + o.sig);
    return sig;
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--sig: ") + e.what());
  }
}

long max_weight(const Options& o) {
  long w = kDefaultMaxWeight;
  if (o.max_weight) {
    w = *o.max_weight;
  } else if (const char* env = std::getenv("TATECALC_MAX_WEIGHT"); env && *env) {
    char* end = nullptr;
    w = std::strtol(env, &end, 10);
    if (*end != '\0')
      throw UsageError(std::string("TATECALC_MAX_WEIGHT is not an integer: ") + env);
  }
  if (w < 0)
    throw UsageError("--max-weight must be nonnegative, got " + std::to_string(w));
  return w;
}

spectral::Variant variant(const Options& o) {
  return o.variant == "flag" ? spectral::Variant::flag : spectral::Variant::full;
}

void forbid_poly(const Options& o, const std::string& command) {
  if (o.format == "poly")
    throw UsageError("--format poly applies only to 'motive', not '" + command + "'");
}

void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

int emit_motive(const Options& o, const TateMotive& a, std::ostream& out) {
  if (o.format == "json") {
    print_json(out, to_json(a));
  } else if (o.format == "poly") {
    out << to_string(poincare(a)) << "\n";
  } else {
    out << "p\tq\tmult\n";
    for (const auto& [b, mult] : a.summands())
      out << b.p << "\t" << b.q << "\t" << mult << "\n";
  }
  return ok;
}

int report(const Options& o, bool passed, const std::string& text, const nlohmann::json& json, std::ostream& out) {
  if (o.format == "json")
    print_json(out, json);
  else
    out << text << (text.empty() || text.back() == '\n' ? "" : "\n");
  return passed ? ok : verification_failed;
}

// verify ---------------------------------------------------------------------------

int verify_adjoint(const Options& o, std::ostream& out) {
  const int n = need_n(o, 1);
  const auto derivation = hopf::derive_adjoint_coaction(n);
  const auto expected = hopf::trivial_coaction(n);
  const bool passed = derivation.formula.images == expected.images;
  std::size_t widest = 0;
  for (const auto& [i, steps] : derivation.steps)
    for (const auto& s : steps)
      widest = std::max(widest, s.value.size());

  std::ostringstream text;
  text << (passed ? "PASS" : "FAIL") << " adjoint coaction on GL_" << n << " is trivial"
       << " (widest intermediate step: " << widest << " terms)\n";
  for (const auto& [i, steps] : derivation.steps) {
    text << "  ρ[" << i << "]\n";
    for (const auto& s : steps)
      text << "    " << s.map << ": " << hopf::to_string(s.value) << "\n";
    const auto& image = derivation.formula.images.at(i);
    text << "    result: " << hopf::to_string(image);
    if (image != expected.images.at(i))
      text << "  expected " << hopf::to_string(expected.images.at(i));
    text << "\n";
  }

  auto steps = nlohmann::json::object();
  for (const auto& [i, ss] : derivation.steps) {
    auto arr = nlohmann::json::array();
    for (const auto& s : ss)
      arr.push_back({{"map", s.map}, {"value", hopf::to_json(s.value)}});
    steps[std::to_string(i)] = arr;
  }
  nlohmann::json json{{"check", "adjoint"},
                      {"n", n},
                      {"formula", hopf::to_json(derivation.formula)},
                      {"steps", steps},
                      {"widest_step", widest},
                      {"passed", passed}};
  return report(o, passed, text.str(), json, out);
}

int verify_dual_exterior(const Options& o, std::ostream& out) {
  const int n = need_n(o, 1);
  const auto dual = hopf::dual_algebra(n, n);
  const auto check = hopf::check_exterior(dual);
  std::ostringstream text;
  text << (check.passed() ? "PASS" : "FAIL") << " dual of H(GL_" << n << ") is exterior ("
       << dual.basis.size() << " basis elements, " << dual.products.size() << " nonzero products)\n";
  for (const auto& f : check.failures)
    text << "  " << f << "\n";
  nlohmann::json json{{"check", "dual-exterior"},
                      {"n", n},
                      {"squares_vanish", check.squares_vanish},
                      {"anticommute", check.anticommute},
                      {"unit", check.unit},
                      {"generated", check.generated},
                      {"failures", check.failures},
                      {"passed", check.passed()}};
  return report(o, check.passed(), text.str(), json, out);
}

int run_verify(const std::string& what, const Options& o, std::ostream& out) {
  forbid_poly(o, "verify " + what);
  if (what == "splitting") {
    const auto r = catalog::verify_splitting(need_n(o, 1));
    return report(o, r.passed, catalog::to_text(r), catalog::to_json(r), out);
  }
  if (what == "adjoint")
    return verify_adjoint(o, out);
  if (what == "dual-exterior")
    return verify_dual_exterior(o, out);
  if (what == "thom") {
    const auto r = realization::thom_decomposition_check(need_n(o, 1));
    return report(o, r.passed, realization::to_text(r), realization::to_json(r), out);
  }
  if (what == "qseries") {
    const auto r = realization::qseries_splitting_check(need_n(o, 0));
    return report(o, r.passed, realization::to_text(r), realization::to_json(r), out);
  }
  if (what == "bijection") {
    const auto r = catalog::check_bijection(need_sig(o));
    return report(o, r.passed, catalog::to_text(r), catalog::to_json(r), out);
  }
  if (what == "ss") {
    const auto sig = need_sig(o, 2);
    const long w = max_weight(o);
    if (w < sig.back())
      throw UsageError("--max-weight must be at least n_r = " + std::to_string(sig.back()) + " for 'verify ss'");
    const auto r = spectral::check_ss_description(sig, w);
    return report(o, r.passed, spectral::to_text(r), spectral::to_json(r), out);
  }
  if (what == "rank") {
    const auto sig = need_sig(o, 2);
    const auto r = spectral::einfty_rank_check(sig, max_weight(o));
    return report(o, r.passed, spectral::to_text(r), spectral::to_json(r), out);
  }
  throw UsageError("unknown verify target '" + what + "'");
}

// motive ---------------------------------------------------------------------------

int run_motive(const std::string& what, const Options& o, std::ostream& out) {
  if (what == "gl")
    return emit_motive(o, catalog::motive_gl(need_n(o, 0)), out);
  if (what == "gr") {
    const int n = need_n(o, 0);
    return emit_motive(o, catalog::motive_gr(need_m(o, n), n), out);
  }
  if (what == "v") {
    const int n = need_n(o, 0);
    return emit_motive(o, catalog::motive_v(need_m(o, n), n), out);
  }
  if (what == "fl")
    return emit_motive(o, catalog::motive_fl(need_sig(o)), out);
  if (what == "a")
    return emit_motive(o, catalog::motive_a(need_sig(o)), out);
  if (what == "x") {
    const auto sig = need_sig(o);
    return emit_motive(o, catalog::reduced_motive_x(need_m(o, sig.front()), sig), out);
  }
  throw UsageError("unknown motive '" + what + "'");
}

// e2 / chart / coaction ----------------------------------------------------------------

spectral::E2Page page_for(const Options& o) {
  const auto sig = need_sig(o, 2);
  return spectral::build_e2(sig, variant(o), max_weight(o));
}

void write_svg(const Options& o, const spectral::E2Page& page, std::ostream& err) {
  if (o.svg.empty())
    return;
  spectral::chart_svg(page, o.svg);
  err << "wrote " << o.svg << "\n";
}

int run_e2(const Options& o, bool targets, std::ostream& out, std::ostream& err) {
  forbid_poly(o, "e2");
  const auto page = page_for(o);
  const int max_s = static_cast<int>(std::max(2L, 2 * page.max_weight()));
  if (targets) {
    if (o.format == "json")
      print_json(out, spectral::targets_json(page, max_s));
    else
      out << spectral::targets_text(page, max_s);
  } else if (o.format == "json") {
    print_json(out, spectral::to_json(page));
  } else {
    out << spectral::generator_table(page);
  }
  write_svg(o, page, err);
  return ok;
}

int run_chart(const Options& o, std::ostream& out, std::ostream& err) {
  const auto page = page_for(o);
  if (o.svg.empty())
    out << spectral::render_svg(page);
  else
    write_svg(o, page, err);
  return ok;
}

int run_coaction(const Options& o, std::ostream& out) {
  forbid_poly(o, "coaction stiefel");
  const int n = need_n(o, 1);
  const int m = need_m(o, n);
  if (m == 0)
    throw UsageError("--m must be positive for 'coaction stiefel'");
  const auto f = hopf::stiefel_coaction(m, n);
  if (o.format == "json") {
    print_json(out, hopf::to_json(f));
    return ok;
  }
  out << f.name << "\n";
  for (const auto& [i, image] : f.images)
    out << "  " << f.module.symbol() << "[" << i << "] ↦ " << hopf::to_string(image) << "\n";
  return ok;
}

void add_common(CLI::App* app, Options& o, bool with_sig, bool with_n, bool with_m, bool with_weight) {
  if (with_n)
    app->add_option("--n", o.n, "rank n");
  if (with_m)
    app->add_option("--m", o.m, "m");
  if (with_sig)
    app->add_option("--sig", o.sig, "signature n_1,...,n_r (strictly increasing)");
  if (with_weight)
    app->add_option("--max-weight", o.max_weight, "weight truncation (default $TATECALC_MAX_WEIGHT or 10)");
  app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "poly", "json"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tate motive bookkeeping for GL_n, flag varieties and their quotients", "tatecalc"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* motive = app.add_subcommand("motive", "print a Tate decomposition");
  motive->require_subcommand(1);
  const std::vector<std::tuple<std::string, std::string, bool, bool, bool>> motives{
      {"gl", "GL_n", false, true, false},
      {"gr", "Grassmannian Gr(m,n)", false, true, true},
      {"fl", "flag variety Fl(sig)", true, false, false},
      {"v", "Stiefel variety V(m,n)", false, true, true},
      {"a", "A(sig) = GL_{n_1} x Fl(sig)", true, false, false},
      {"x", "reduced motive of X_m(sig)", true, false, true},
  };
  for (const auto& [name, desc, s, n, m] : motives) {
    auto* sub = motive->add_subcommand(name, desc);
    add_common(sub, o, s, n, m, false);
    sub->callback([&, name = name] { action = [&, name] { return run_motive(name, o, out); }; });
  }

  auto* verify = app.add_subcommand("verify", "run an exact verification");
  verify->require_subcommand(1);
  const std::vector<std::tuple<std::string, std::string, bool, bool, bool>> checks{
      {"splitting", "M(GL_n) splitting into Thom-twisted Grassmannians", false, true, false},
      {"adjoint", "derive the adjoint coaction on GL_n", false, true, false},
      {"dual-exterior", "dual Hopf algebra is exterior", false, true, false},
      {"thom", "word-length ranks vs shifted Grassmannian Betti numbers", false, true, false},
      {"qseries", "product vs Gaussian binomial sum", false, true, false},
      {"bijection", "Chow height summands of A(m,sig) and A(sig)", true, false, false},
      {"ss", "differential candidates on the E2 page", true, false, true},
      {"rank", "E-infinity rank count", true, false, true},
  };
  for (const auto& [name, desc, s, n, w] : checks) {
    auto* sub = verify->add_subcommand(name, desc);
    add_common(sub, o, s, n, false, w);
    sub->callback([&, name = name] { action = [&, name] { return run_verify(name, o, out); }; });
  }

  auto* e2 = app.add_subcommand("e2", "E2 page generators, optionally differential targets");
  add_common(e2, o, true, false, false, true);
  e2->add_option("--variant", o.variant, "full or flag")->check(CLI::IsMember({"full", "flag"}));
  e2->add_option("--svg", o.svg, "also write the chart to PATH");
  auto* targets = e2->add_subcommand("targets", "candidate differential targets of each generator");
  add_common(targets, o, true, false, false, true);
  targets->add_option("--variant", o.variant, "full or flag")->check(CLI::IsMember({"full", "flag"}));
  targets->add_option("--svg", o.svg, "also write the chart to PATH");
  e2->callback([&] {
    const bool t = targets->parsed();
    action = [&, t] { return run_e2(o, t, out, err); };
  });

  auto* chart = app.add_subcommand("chart", "SVG chart of the E2 page");
  add_common(chart, o, true, false, false, true);
  chart->add_option("--variant", o.variant, "full or flag")->check(CLI::IsMember({"full", "flag"}));
  chart->add_option("--svg", o.svg, "write to PATH instead of stdout");
  chart->callback([&] { action = [&] { return run_chart(o, out, err); }; });

  auto* coaction = app.add_subcommand("coaction", "print a coaction formula");
  coaction->require_subcommand(1);
  auto* stiefel = coaction->add_subcommand("stiefel", "GL_m acting on V'(m,n)");
  add_common(stiefel, o, false, true, true, false);
  stiefel->callback([&] { action = [&] { return run_coaction(o, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_error;
  }
  if (!action) {
    err << "usage error: incomplete command\n";
    return usage_error;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_error;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return verification_failed;
  }
}

}  // namespace tatecalc::cli
