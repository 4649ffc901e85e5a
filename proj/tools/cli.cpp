#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "nilgrp/bch.hpp"
#include "nilgrp/doubling_lab.hpp"
#include "nilgrp/errors.hpp"
#include "nilgrp/formal_word.hpp"
#include "nilgrp/identities.hpp"
#include "nilgrp/json_io.hpp"
#include "nilgrp/matrix.hpp"
#include "nilgrp/parallel.hpp"

namespace nilgrp::cli {

namespace {

struct GlobalFlags {
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
  std::size_t cap = lab::LabLimits{}.max_elements;
};

struct Output {
  Json json;
  std::string text;
};

lab::LabLimits limits_from(const GlobalFlags& g) {
  lab::LabLimits limits;
  limits.max_elements = g.cap;
  limits.threads = g.threads;
  return limits;
}

CorrectionShape parse_shape(const std::string& s) {
  return s == "inner" ? CorrectionShape::kInnerExponent : CorrectionShape::kOuterExponent;
}

Json degree_json(const std::optional<int>& d) {
  if (!d) return "exact";
  return *d;
}

// ---- hall ----

Output cmd_hall(int gens, int step) {
  auto ctx = AlgebraContext::with_default_symbols(gens, step);
  ctx.validate();
  auto algebra = LieAlgebra::get(ctx);
  Json basis = Json::array();
  Json dims = Json::array();
  std::ostringstream text;
  for (int d = 1; d <= step; ++d) {
    auto [lo, hi] = algebra->degree_range(d);
    dims.push_back(hi - lo);
  }
  for (std::size_t i = 0; i < algebra->basis().size(); ++i) {
    const HallWord& w = algebra->basis()[i];
    std::string letters;
    for (int l : w.letters) letters += ctx.generator_symbols[static_cast<std::size_t>(l)];
    basis.push_back(Json{{"index", i}, {"degree", w.degree()}, {"word", w.text}, {"lyndon", letters}});
    text << i << "\t" << w.degree() << "\t" << w.text << "\n";
  }
  Json j{{"gens", gens}, {"step", step}, {"dimension", algebra->basis().size()}, {"dimensions_by_degree", dims},
         {"basis", basis}};
  return {j, text.str()};
}

// ---- bch ----

Output cmd_bch(int gens, int step, bool degree_table) {
  if (degree_table) {
    if (gens != 2) throw InvalidArgument("--degree-table needs --gens 2");
    const BchTailTable table = bch_tail_table(*LieAlgebra::get(2, step));
    std::ostringstream text;
    for (const auto& [alpha, c] : table.entries) text << alpha.to_string() << "\t" << c.to_string() << "\n";
    return {to_json(table.entries), text.str()};
  }
  auto algebra = LieAlgebra::get(gens, step);
  const LieElement z = multi_bch(algebra->generators());
  return {Json{{"gens", gens}, {"step", step}, {"log", to_json(z)}}, z.to_string() + "\n"};
}

// ---- synthesis ----

Output cmd_synth_sum(int step, const std::string& shape) {
  if (step < 1) throw InvalidArgument("step must be positive");
  auto ctx = AlgebraContext{2, step, {"a", "b"}};
  ctx.validate();
  auto algebra = LieAlgebra::get(ctx);
  check_synthesis_limits(*algebra);
  const SumWord sw = sum_word(*algebra, parse_shape(shape));
  if (!validate_certificate(sw.certificate) || !sw.certificate.exact())
    throw InvariantViolation("sum word certificate failed validation");
  const std::string word = serialize_word(sw.word);
  Json j{{"m", sw.m}, {"word", word}, {"length", sw.length}, {"certificate", "exact"}};
  std::ostringstream text;
  text << "m\t" << sw.m << "\nword\t" << word << "\nlength\t" << sw.length << "\ncertificate\texact\n";
  return {j, text.str()};
}

Output cmd_synth_power(int step, int gens, int level, std::int64_t t, const std::string& shape) {
  auto ctx = AlgebraContext::with_default_symbols(gens, step);
  ctx.validate();
  auto algebra = LieAlgebra::get(ctx);
  check_synthesis_limits(*algebra);
  const PowerWordSynthesis pw = power_word_synthesis(t, level, *algebra, parse_shape(shape));
  if (!validate_certificate(pw.certificate)) throw InvariantViolation("power word certificate failed validation");
  const std::string word = serialize_word(pw.word);
  Json residual_degrees = Json::array();
  for (int d : pw.certificate.residual.support_degrees()) residual_degrees.push_back(d);
  Json j{{"step", step},
         {"gens", gens},
         {"level", level},
         {"T", t},
         {"divisors", pw.divisors},
         {"word", word},
         {"length", word_length(pw.word)},
         {"residual_degrees", residual_degrees},
         {"min_residual_degree", degree_json(pw.certificate.min_residual_degree)},
         {"residual", to_json(pw.certificate.residual)}};
  std::ostringstream text;
  text << "divisors\t";
  for (std::size_t i = 0; i < pw.divisors.size(); ++i) text << (i ? "," : "") << pw.divisors[i];
  text << "\nword\t" << word << "\nmin_residual_degree\t" << degree_json(pw.certificate.min_residual_degree).dump()
       << "\n";
  return {j, text.str()};
}

Output cmd_extract_bracket(int step, int gens, std::int64_t scale, std::istream& in) {
  auto ctx = AlgebraContext::with_default_symbols(gens, step);
  ctx.validate();
  auto algebra = LieAlgebra::get(ctx);
  Json input;
  try {
    input = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string("stdin is not JSON: ") + e.what());
  }
  Json a, b;
  if (input.is_array() && input.size() == 2) {
    a = input[0];
    b = input[1];
  } else if (input.is_object() && input.contains("a") && input.contains("b")) {
    a = input["a"];
    b = input["b"];
  } else {
    throw InvalidArgument("expected [log_a, log_b] or {\"a\": log_a, \"b\": log_b} on stdin");
  }
  const VandermondeRecipe recipe = vandermonde_recipe(step, scale);
  const LieElement u = extract_bracket(GroupElement(lie_from_json(a, algebra)), GroupElement(lie_from_json(b, algebra)),
                                       recipe);
  return {Json{{"step", step}, {"bracket", to_json(u)}}, u.to_string() + "\n"};
}

// ---- verify-identities ----

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
};

template <class Input>
std::size_t count_failures(const std::vector<Input>& inputs, int threads, const std::function<bool(const Input&)>& ok) {
  auto chunks = parallel_chunks(inputs.size(), threads, [&](std::size_t begin, std::size_t end) {
    std::size_t bad = 0;
    for (std::size_t i = begin; i < end; ++i) bad += ok(inputs[i]) ? 0 : 1;
    return bad;
  });
  return std::accumulate(chunks.begin(), chunks.end(), std::size_t{0});
}

Output cmd_verify(int step, int trials, const GlobalFlags& g) {
  if (step < 1 || step > 5) throw InvalidArgument("verify-identities supports steps 1..5");
  if (trials < 0) throw InvalidArgument("trials must be nonnegative");
  std::mt19937_64 rng(g.seed);
  auto algebra = LieAlgebra::get(2, step);
  std::vector<CheckResult> checks;

  const std::size_t dim = static_cast<std::size_t>(step) + 1;
  std::vector<std::pair<NilpotentMatrix, NilpotentMatrix>> matrix_pairs;
  for (int i = 0; i < trials; ++i) {
    NilpotentMatrix x = random_nilpotent(dim, rng);
    matrix_pairs.emplace_back(std::move(x), random_nilpotent(dim, rng));
  }

  {
    const LieElement z = bch(algebra->generator(0), algebra->generator(1));
    CheckResult r{"bch_matrix_oracle", matrix_pairs.size(), 0};
    r.failures = count_failures<std::pair<NilpotentMatrix, NilpotentMatrix>>(
        matrix_pairs, g.threads, [&](const auto& p) {
          return substitute(z, {p.first, p.second}) == mat_log(mul(mat_exp(p.first), mat_exp(p.second)));
        });
    checks.push_back(r);
  }
  {
    CheckResult r{"commutator_log_tails", 0, 0};
    const auto gens = algebra->generators();
    std::vector<GroupElement> group_gens;
    for (const auto& x : gens) group_gens.emplace_back(x);
    for (int arity = 2; arity <= step; ++arity)
      for (const auto& alpha : all_patterns(arity, 2)) {
        ++r.cases;
        const LieElement diff = nested_commutator(alpha, group_gens).log() - eval_bracket_pattern(alpha, gens);
        const auto low = diff.min_degree();
        if (low && *low <= arity) ++r.failures;
      }
    checks.push_back(r);
  }
  {
    CheckResult r{"sum_word", 1, 0};
    auto ab = LieAlgebra::get(AlgebraContext{2, step, {"a", "b"}});
    const SumWord sw = sum_word(*ab);
    if (!validate_certificate(sw.certificate) || !sw.certificate.exact()) ++r.failures;
    r.cases += matrix_pairs.size();
    r.failures += count_failures<std::pair<NilpotentMatrix, NilpotentMatrix>>(
        matrix_pairs, g.threads, [&](const auto& p) {
          const std::map<std::string, UnipotentMatrix> env{{"a", mat_exp(p.first)}, {"b", mat_exp(p.second)}};
          return evaluate_word(sw.word, env, UnipotentMatrix::identity(dim)) ==
                 mat_exp((p.first + p.second) * Rational(sw.m));
        });
    checks.push_back(r);
  }
  {
    CheckResult r{"power_word", 0, 0};
    for (int level = 1; level <= step; ++level) {
      const auto divisors = power_word_divisors(level, *algebra);
      std::int64_t t = 1;
      for (auto c : divisors) t = std::lcm(t, c);
      ++r.cases;
      const PowerWordSynthesis pw = power_word_synthesis(t, level, *algebra);
      const auto low = pw.certificate.min_residual_degree;
      if (!validate_certificate(pw.certificate) || (low && *low <= level)) ++r.failures;
      if (t > 1) {
        ++r.cases;
        try {
          power_word_synthesis(t + 1, level, *algebra);
          ++r.failures;
        } catch (const DivisibilityViolation&) {
        }
      }
    }
    checks.push_back(r);
  }
  if (step >= 2) {
    std::vector<std::pair<LieElement, LieElement>> lie_pairs;
    for (int i = 0; i < trials; ++i) {
      LieElement x = random_lie_element(algebra, rng);
      lie_pairs.emplace_back(std::move(x), random_lie_element(algebra, rng));
    }
    const VandermondeRecipe recipe = vandermonde_recipe(step, 1);
    CheckResult r{"extract_bracket", lie_pairs.size(), 0};
    r.failures = count_failures<std::pair<LieElement, LieElement>>(lie_pairs, g.threads, [&](const auto& p) {
      return extract_bracket(GroupElement(p.first), GroupElement(p.second), recipe) == bracket(p.first, p.second);
    });
    checks.push_back(r);
  }

  bool passed = true;
  Json list = Json::array();
  std::ostringstream text;
  for (const auto& c : checks) {
    passed = passed && c.failures == 0;
    list.push_back(Json{{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"passed", c.failures == 0}});
    text << (c.failures == 0 ? "PASS" : "FAIL") << "\t" << c.name << "\t" << c.cases << " cases, " << c.failures
         << " failures\n";
  }
  Json j{{"step", step}, {"trials", trials}, {"seed", g.seed}, {"checks", list}, {"passed", passed}};
  return {j, text.str()};
}

// ---- growth ----

struct GrowthOptions {
  std::string group = "ut";
  int dim = 3;
  int radius = 1;
  std::vector<int> powers{1, 2};
  std::string mode = "exhaustive";
  std::size_t samples = 50;
  std::string out_path;
  bool timing = false;
};

Output cmd_growth(const GrowthOptions& o, const GlobalFlags& g) {
  using Clock = std::chrono::steady_clock;
  if (o.group != "ut") throw InvalidArgument("only --group ut is supported");
  if (o.dim < 2) throw InvalidArgument("--dim must be at least 2");
  if (o.radius < 0) throw InvalidArgument("--radius must be nonnegative");
  if (o.powers.empty()) throw InvalidArgument("--powers must list at least one power");
  for (int k : o.powers)
    if (k < 1) throw InvalidArgument("powers must be positive");
  const lab::SearchMode mode = o.mode == "sampled" ? lab::SearchMode::kSampled : lab::SearchMode::kExhaustive;
  const lab::LabLimits limits = limits_from(g);
  const std::size_t dim = static_cast<std::size_t>(o.dim);
  const int step = o.dim - 1;
  Json timing = Json::object();
  auto timed = [&](const char* name, auto&& fn) {
    const auto start = Clock::now();
    auto result = fn();
    timing[name] = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    return result;
  };
  std::ostringstream text;
  bool passed = true;

  const lab::FiniteGroupSet a =
      timed("ball", [&] { return lab::generate_ball(dim, lab::standard_generators(dim), o.radius, limits); });
  text << "|A|\t" << a.size() << "\n";

  Json powers = Json::array();
  timed("powers", [&] {
    for (int k : o.powers) {
      const auto ak = lab::power_set(a, k, limits);
      powers.push_back(Json{{"k", k},
                            {"size", ak.size()},
                            {"ratio", Rational(static_cast<std::int64_t>(ak.size()), static_cast<std::int64_t>(a.size()))
                                          .to_string()}});
      text << "|A^" << k << "|\t" << ak.size() << "\n";
    }
    return 0;
  });

  const lab::LogSet logs = lab::log_set(a);
  const lab::LogSet sums = timed("sumset", [&] { return lab::sumset(logs, logs, limits); });
  const Rational doubling(static_cast<std::int64_t>(sums.size()), static_cast<std::int64_t>(logs.size()));
  text << "|log A|\t" << logs.size() << "\n|log A + log A|\t" << sums.size() << "\n";

  const lab::CoverReport cover = timed("cover", [&] { return lab::find_cover(a, limits); });
  passed = passed && cover.valid;
  text << "cover constant\t" << cover.translate_count << (cover.valid ? "" : " (INVALID)") << "\n";

  Json sum_reports = Json::array();
  timed("sum_containment", [&] {
    for (int k : o.powers) {
      Json entry{{"k1", k}, {"k2", k}};
      try {
        const auto r = lab::check_sum_containment(a, k, k, step, limits);
        entry.update(Json{{"m", r.scale},
                          {"word_length", r.word_length},
                          {"power", r.power},
                          {"mode", r.mode},
                          {"pairs_checked", r.pairs_checked},
                          {"failures", r.failures},
                          {"max_witness_power", r.max_witness_power},
                          {"status", r.passed() ? "passed" : "failed"}});
        passed = passed && r.passed();
        text << "sum containment k=" << k << "\t" << (r.passed() ? "passed" : "FAILED") << " (" << r.mode << ", "
             << r.pairs_checked << " pairs)\n";
      } catch (const SizeCapExceeded& e) {
        entry["status"] = "skipped_cap";
        entry["reason"] = e.what();
        text << "sum containment k=" << k << "\tskipped (cap)\n";
      }
      sum_reports.push_back(entry);
    }
    return 0;
  });

  const auto chain = timed("commutator_chain", [&] { return lab::compute_b_chain(a, step, limits); });
  Json chain_sizes = Json::array();
  for (const auto& b : chain) chain_sizes.push_back(b.size());
  const bool terminates = chain.back().size() == 1 && chain.back().elements().front().is_zero();
  passed = passed && terminates;
  text << "B chain sizes\t" << chain_sizes.dump() << "\n";

  Json containment = Json::array();
  timed("commutator_containment", [&] {
    for (int level = 1; level < step; ++level) {
      const ContainmentCertificate cert = containment_certificate(level, step);
      Json entry{{"j", level}, {"certificate", to_json(cert)}};
      try {
        const auto r = lab::check_commutator_containment(a, level, cert, mode, o.samples, g.seed, limits);
        entry.update(Json{{"mode", r.mode},
                          {"chain_size", r.chain_size},
                          {"checked", r.checked},
                          {"failures", r.failures},
                          {"status", r.passed() ? "passed" : "failed"}});
        passed = passed && r.passed();
        text << "commutator containment j=" << level << "\t" << (r.passed() ? "passed" : "FAILED") << " ("
             << r.mode << ", " << r.checked << " of " << r.chain_size << ")\n";
      } catch (const SizeCapExceeded& e) {
        entry["status"] = "skipped_cap";
        entry["reason"] = e.what();
        text << "commutator containment j=" << level << "\tskipped (cap)\n";
      }
      containment.push_back(entry);
    }
    return 0;
  });

  Json j{{"group", o.group},
         {"dim", o.dim},
         {"step", step},
         {"radius", o.radius},
         {"seed", g.seed},
         {"mode", o.mode},
         {"ball", Json{{"size", a.size()}, {"symmetric", a.is_symmetric()}}},
         {"powers", powers},
         {"log_set", Json{{"size", logs.size()}, {"sumset_size", sums.size()}, {"doubling_ratio", doubling.to_string()}}},
         {"cover", Json{{"product_size", cover.product_size}, {"constant", cover.translate_count}, {"valid", cover.valid}}},
         {"sum_containment", sum_reports},
         {"commutator_chain", Json{{"sizes", chain_sizes}, {"terminates", terminates}}},
         {"commutator_containment", containment},
         {"passed", passed}};
  if (o.timing) j["timing_ms"] = timing;
  text << "passed\t" << (passed ? "true" : "false") << "\n";
  return {j, text.str()};
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"error", Json{{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in free nilpotent Lie algebras and groups", "nilgrp"};
  app.require_subcommand(1, 1);
  GlobalFlags g;
  auto add_globals = [&](CLI::App* sub) {
    sub->add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", g.seed, "Random seed (default " + std::to_string(kDefaultSeed) + ")");
    sub->add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--cap", g.cap, "Maximum elements per enumerated set")->check(CLI::PositiveNumber);
  };
  add_globals(&app);

  std::function<Output()> action;
  int gens = 2;
  int step = 2;
  int level = 1;
  std::int64_t t = 0;
  std::int64_t scale = 1;
  int trials = 100;
  bool degree_table = false;
  std::string shape = "outer";
  GrowthOptions growth;

  auto* hall = app.add_subcommand("hall", "List the Hall basis");
  hall->add_option("--gens", gens, "Number of generators")->required();
  hall->add_option("--step", step, "Nilpotency step")->required();
  hall->callback([&] { action = [&] { return cmd_hall(gens, step); }; });

  auto* bch_cmd = app.add_subcommand("bch", "BCH series of the generators, or its right-normed tail table");
  bch_cmd->add_option("--step", step, "Nilpotency step")->required();
  bch_cmd->add_option("--gens", gens, "Number of generators");
  bch_cmd->add_flag("--degree-table", degree_table, "Emit the tail coefficients over right-normed brackets");
  bch_cmd->callback([&] { action = [&] { return cmd_bch(gens, step, degree_table); }; });

  auto* synth_sum = app.add_subcommand("synth-sum", "Word w(a, b) with log w = m (log a + log b)");
  synth_sum->add_option("--step", step, "Nilpotency step")->required();
  synth_sum->add_option("--shape", shape, "Correction shape")->check(CLI::IsMember({"outer", "inner"}));
  synth_sum->callback([&] { action = [&] { return cmd_synth_sum(step, shape); }; });

  auto* synth_power = app.add_subcommand("synth-power", "Word whose log is T (x1 + ... + xL) up to degree j");
  synth_power->add_option("--step", step, "Nilpotency step")->required();
  synth_power->add_option("--gens", gens, "Number of generators")->required();
  synth_power->add_option("--level", level, "Level j")->required();
  synth_power->add_option("--T", t, "Multiplier T")->required();
  synth_power->add_option("--shape", shape, "Correction shape")->check(CLI::IsMember({"outer", "inner"}));
  synth_power->callback([&] { action = [&] { return cmd_synth_power(step, gens, level, t, shape); }; });

  auto* extract = app.add_subcommand("extract-bracket", "Recover [log a, log b] from conjugates (logs on stdin)");
  extract->add_option("--step", step, "Nilpotency step")->required();
  extract->add_option("--gens", gens, "Number of generators");
  extract->add_option("--scale", scale, "Power m of b used in the conjugates")->check(CLI::PositiveNumber);
  extract->callback([&] { action = [&] { return cmd_extract_bracket(step, gens, scale, in); }; });

  auto* verify = app.add_subcommand("verify-identities", "Run the exact oracle checks at one step");
  verify->add_option("--step", step, "Nilpotency step")->required();
  verify->add_option("--trials", trials, "Random trials per randomized check");
  verify->callback([&] { action = [&] { return cmd_verify(step, trials, g); }; });

  auto* growth_cmd = app.add_subcommand("growth", "Growth and containment experiments in UT(d, Z)");
  growth_cmd->add_option("--group", growth.group, "Ambient group")->check(CLI::IsMember({"ut"}));
  growth_cmd->add_option("--dim", growth.dim, "Matrix dimension d")->required();
  growth_cmd->add_option("--radius", growth.radius, "Ball radius")->required();
  growth_cmd->add_option("--powers", growth.powers, "Powers k1,k2,...")->delimiter(',');
  growth_cmd->add_option("--mode", growth.mode, "Search mode")->check(CLI::IsMember({"exhaustive", "sampled"}));
  growth_cmd->add_option("--samples", growth.samples, "Targets checked in sampled mode");
  growth_cmd->add_option("--out", growth.out_path, "Also write the JSON report here");
  growth_cmd->add_flag("--timing", growth.timing, "Include wall-clock timings (not reproducible)");
  growth_cmd->callback([&] { action = [&] { return cmd_growth(growth, g); }; });

  for (auto* sub : app.get_subcommands({})) add_globals(sub);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return kUsage;
  }

  try {
    const Output result = action();
    if (g.format == "json")
      out << result.json.dump(2) << "\n";
    else
      out << result.text;
    if (!growth.out_path.empty()) {
      std::ofstream file(growth.out_path);
      if (!file) throw InvalidArgument("cannot write " + growth.out_path);
      file << result.json.dump(2) << "\n";
    }
    if (result.json.is_object() && result.json.contains("passed") && !result.json["passed"].get<bool>())
      return kInvariant;
    return kOk;
  } catch (const SizeCapExceeded& e) {
    emit_error(err, "size_cap", e.what());
    return kSizeCap;
  } catch (const InvariantViolation& e) {
    emit_error(err, "invariant", e.what());
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    emit_error(err, "usage", e.what());
    return kUsage;
  } catch (const std::out_of_range& e) {
    emit_error(err, "usage", e.what());
    return kUsage;
  }
}

}  // namespace nilgrp::cli
