#include "app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "expr.hpp"

namespace fermat::cli {

namespace {

using json = nlohmann::ordered_json;

struct Command {
  std::string name;
  std::string x, y;
  std::string f, at, rhs, h, a, b, target, delta, point, interval;
  std::vector<std::string> v;
  bool negative_root = false;
  std::size_t n = 8;
};

template <Scalar S>
json to_json(const FermatReal<S>& x) {
  json terms = json::array();
  for (const auto& term : x.terms()) {
    terms.push_back({{"exponent", to_string(term.exponent.value())},
                     {"coefficient", ScalarTraits<S>::str(term.coefficient)}});
  }
  return {{"text", to_text(x)}, {"standard", ScalarTraits<S>::str(x.standard_part())}, {"terms", terms}};
}

json to_json(const IsolatedRoot& r) {
  if (r.exact()) return {{"value", to_string(r.lo)}};
  return {{"lo", to_string(r.lo)}, {"hi", to_string(r.hi)}};
}

template <Scalar S>
FermatReal<S> fermat_arg(const std::string& text) {
  return evaluate<S>(parse_expression(text));
}

template <Scalar S>
S real_arg(const std::string& text, std::string_view what) {
  FermatReal<S> x = fermat_arg<S>(text);
  if (!x.is_real()) fail(ErrorCode::invalid_argument, std::string(what) + " must be a real number");
  return x.standard_part();
}

RealEndpoint endpoint(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "-inf") return RealEndpoint::neg_inf();
  if (text == "inf" || text == "+inf") return RealEndpoint::pos_inf();
  FermatReal<Rational> x = evaluate<Rational>(parse_expression(text));
  if (!x.is_real()) fail(ErrorCode::invalid_argument, "interval endpoints must be real");
  return RealEndpoint::at(x.standard_part());
}

RealInterval interval_arg(const std::string& text) {
  if (text.empty()) return RealInterval::whole_line();
  auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError(0, {"','"}, "interval must look like lo,hi");
  RealInterval r{endpoint(std::string_view(text).substr(0, comma)),
                 endpoint(std::string_view(text).substr(comma + 1))};
  if (r.lo.kind == RealEndpoint::Kind::pos_inf || r.hi.kind == RealEndpoint::Kind::neg_inf ||
      (r.lo.finite() && r.hi.finite() && !(r.lo.value < r.hi.value))) {
    fail(ErrorCode::invalid_argument, "empty interval");
  }
  return r;
}

template <Scalar S>
std::string verdict_text(const ConvergenceVerdict<S>& v) {
  if (std::holds_alternative<NotCharacterizedInPrefix>(v)) return "NotCharacterizedInPrefix";
  const auto& c = std::get<CharacterizedWith<S>>(v);
  std::string tail;
  for (const auto& b : c.tail) tail += (tail.empty() ? "" : ", ") + ScalarTraits<S>::str(b);
  return "CharacterizedWith(N=" + std::to_string(c.index) + ", tail=[" + tail + "])";
}

template <Scalar S>
void emit(std::ostream& out, bool as_json, const json& j, const std::string& text) {
  if (as_json) {
    json wrapped = {{"backend", std::string(ScalarTraits<S>::backend_name)}};
    for (auto it = j.begin(); it != j.end(); ++it) wrapped[it.key()] = it.value();
    out << wrapped.dump(2) << "\n";
  } else {
    out << text << "\n";
  }
}

template <Scalar S>
void dispatch(const Command& c, bool as_json, std::ostream& out) {
  using FR = FermatReal<S>;
  const std::string& cmd = c.name;
  if (cmd == "eval") {
    FR x = fermat_arg<S>(c.x);
    emit<S>(out, as_json, {{"value", to_json(x)}}, to_text(x));
  } else if (cmd == "decompose") {
    FR x = fermat_arg<S>(c.x);
    std::ostringstream text;
    text << "standard: " << ScalarTraits<S>::str(x.standard_part());
    for (const auto& term : x.terms()) {
      text << "\nt^" << exponent_text(term.exponent.value()) << ": " << ScalarTraits<S>::str(term.coefficient);
    }
    emit<S>(out, as_json, {{"value", to_json(x)}}, text.str());
  } else if (cmd == "compare") {
    Ordering3 o = compare(fermat_arg<S>(c.x), fermat_arg<S>(c.y));
    emit<S>(out, as_json, {{"result", std::string(symbol(o))}}, std::string(symbol(o)));
  } else if (cmd == "omega") {
    FR x = fermat_arg<S>(c.x);
    std::string w = to_string(order_omega(x));
    std::string k = std::to_string(nilpotency_index(x));
    emit<S>(out, as_json, {{"omega", w}, {"nilpotency", k}}, "omega: " + w + "\nnilpotency: " + k);
  } else if (cmd == "extend") {
    FR y = fermat_extend(*parse_oracle<S>(c.f), fermat_arg<S>(c.at));
    emit<S>(out, as_json, {{"value", to_json(y)}}, to_text(y));
  } else if (cmd == "solve") {
    SolveOptions options{c.negative_root ? RootChoice::negative : RootChoice::positive};
    auto sol = solve_slice_traced(*parse_oracle<S>(c.f), real_arg<S>(c.at, "--at"), fermat_arg<S>(c.rhs), options);
    json steps = json::array();
    for (const auto& s : sol.steps) {
      steps.push_back({{"exponent", to_string(s.exponent)}, {"coefficient", ScalarTraits<S>::str(s.coefficient)}});
    }
    emit<S>(out, as_json,
            {{"solution", to_json(sol.solution)}, {"class", describe(sol.classification)}, {"steps", steps}},
            to_text(sol.solution));
  } else if (cmd == "member") {
    bool in = slice_image_contains(*parse_oracle<S>(c.f), real_arg<S>(c.at, "--at"), fermat_arg<S>(c.rhs));
    emit<S>(out, as_json, {{"member", in}}, in ? "true" : "false");
  } else if (cmd == "family") {
    SolveOptions options{c.negative_root ? RootChoice::negative : RootChoice::positive};
    auto fam = solution_family(*parse_oracle<S>(c.f), real_arg<S>(c.at, "--at"), fermat_arg<S>(c.rhs), options);
    emit<S>(out, as_json, {{"fundamental", to_json(fam.fundamental)}, {"threshold", to_string(fam.threshold)}},
            "fundamental: " + to_text(fam.fundamental) + "\nthreshold: " + to_string(fam.threshold));
  } else if (cmd == "ivp-split") {
    Expr h = parse_expression(c.h);
    std::set<std::string> names = variables(h);
    names.erase("y");
    std::vector<std::string> vars(names.begin(), names.end());
    if (vars.size() != c.v.size()) {
      fail(ErrorCode::invalid_argument, "expected " + std::to_string(vars.size()) +
                                            " --v values (parameters in alphabetical order), got " +
                                            std::to_string(c.v.size()));
    }
    vars.push_back("y");
    MultiPolyOracle<S> oracle(to_multipoly(h, vars), c.h);
    std::vector<FR> params;
    for (const auto& text : c.v) params.push_back(fermat_arg<S>(text));
    SplitResult r = split_domain<S>(oracle, params, interval_arg(c.interval));
    json points = json::array();
    for (const auto& p : r.split_points) points.push_back(to_json(p));
    emit<S>(out, as_json, {{"split_points", points}, {"intervals", describe(r)}}, describe(r));
  } else if (cmd == "ivp-solve") {
    FR x = ivp_solve<S>(*parse_oracle<S>(c.f), fermat_arg<S>(c.a), fermat_arg<S>(c.b), fermat_arg<S>(c.target));
    emit<S>(out, as_json, {{"solution", to_json(x)}}, to_text(x));
  } else if (cmd == "extrema") {
    Extrema<S> e = extrema_on_interval<S>(*parse_oracle<S>(c.f), fermat_arg<S>(c.a), fermat_arg<S>(c.b));
    emit<S>(out, as_json,
            {{"min", to_json(e.min)}, {"argmin", to_json(e.argmin)}, {"max", to_json(e.max)}, {"argmax", to_json(e.argmax)}},
            "min: " + to_text(e.min) + " at " + to_text(e.argmin) + "\nmax: " + to_text(e.max) + " at " +
                to_text(e.argmax));
  } else if (cmd == "demo") {
    CounterexampleParams<S> params;
    params.n = c.n;
    if (!c.delta.empty()) params.delta = real_arg<S>(c.delta, "--delta");
    if (!c.point.empty()) params.point = fermat_arg<S>(c.point);
    SequencePrefix<S> s = make_counterexample<S>(c.x, params);
    auto omega = omega_limit_decompose(s);
    auto order = order_limit_decompose(s);
    std::ostringstream text;
    text << s.generator;
    for (const auto& [k, v] : s.params) text << " " << k << "=" << v;
    json values = json::array();
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      text << "\na_" << i + 1 << " = " << to_text(s.values[i]);
      values.push_back(to_json(s.values[i]));
    }
    json table = json::array();
    text << "\nk\td_omega(a_k, a_k+1)\tnorm_sq(a_k+1 - a_k)\tnorm_sq(a_k^2)";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      std::string d = "-", e = "-";
      if (i + 1 < s.values.size()) {
        d = ScalarTraits<S>::str(d_omega(s.values[i], s.values[i + 1]));
        e = ScalarTraits<S>::str(euclid_norm_sq(FR(s.values[i + 1] - s.values[i])));
      }
      std::string sq = ScalarTraits<S>::str(euclid_norm_sq(FR(s.values[i] * s.values[i])));
      text << "\n" << i + 1 << "\t" << d << "\t" << e << "\t" << sq;
      table.push_back({{"k", i + 1}, {"d_omega_next", d}, {"norm_sq_step", e}, {"norm_sq_square", sq}});
    }
    text << "\nomega_limit_decompose: " << verdict_text(omega);
    text << "\norder_limit_decompose: " << verdict_text(order);
    json params_json = json::object();
    for (const auto& [k, v] : s.params) params_json[k] = v;
    emit<S>(out, as_json,
            {{"generator", s.generator},
             {"params", params_json},
             {"values", values},
             {"metrics", table},
             {"omega_limit_decompose", verdict_text(omega)},
             {"order_limit_decompose", verdict_text(order)}},
            text.str());
  } else {
    fail(ErrorCode::unknown_name, "unknown command '" + cmd + "'");
  }
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string l = trim(line);
    if (l.empty() || l.front() == '[') continue;
    auto eq = l.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, {"'='"}, "config line " + std::to_string(line_no) + " is not key = value");
    }
    std::string value = trim(std::string_view(l).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    out[trim(std::string_view(l).substr(0, eq))] = value;
  }
  return out;
}

Settings resolve_settings(const std::optional<std::string>& backend_flag,
                          const std::optional<unsigned>& precision_flag,
                          const std::map<std::string, std::string>& config, const char* env_backend) {
  Settings s;
  if (auto it = config.find("backend"); it != config.end()) s.backend = it->second;
  if (auto it = config.find("precision"); it != config.end()) {
    try {
      s.precision = static_cast<unsigned>(std::stoul(it->second));
    } catch (const std::exception&) {
      throw ParseError(0, {"integer"}, "config precision must be an integer");
    }
  }
  if (env_backend && *env_backend) s.backend = env_backend;
  if (backend_flag) s.backend = *backend_flag;
  if (precision_flag) s.precision = *precision_flag;
  if (s.backend != "exact" && s.backend != "float") {
    throw ParseError(0, {"exact", "float"}, "unknown backend '" + s.backend + "'");
  }
  if (s.precision < 10 || s.precision > 10000) {
    throw ParseError(0, {"10..10000"}, "precision must be between 10 and 10000 digits");
  }
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact arithmetic on Fermat reals", "fermat"};
  app.fallthrough();
  app.require_subcommand(1);
  std::optional<std::string> backend;
  std::optional<unsigned> precision;
  std::string config_path;
  bool as_json = false;
  app.add_option("--backend", backend, "Scalar backend: exact or float");
  app.add_option("--precision", precision, "Decimal digits for the float backend");
  app.add_option("--config", config_path, "key = value settings file");
  app.add_flag("--json", as_json, "Structured output");

  Command c;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&c, name] { c.name = name; });
    return s;
  };
  sub("eval", "Normalize an expression")->add_option("expr", c.x)->required();
  sub("decompose", "Standard part and terms")->add_option("expr", c.x)->required();
  {
    auto* s = sub("compare", "Dictionary order of two expressions");
    s->add_option("x", c.x)->required();
    s->add_option("y", c.y)->required();
  }
  sub("omega", "Order and nilpotency index")->add_option("expr", c.x)->required();
  {
    auto* s = sub("extend", "Fermat extension of a function at a point");
    s->add_option("--f", c.f)->required();
    s->add_option("--at", c.at)->required();
  }
  for (auto [name, help] : {std::pair{"solve", "Solve f(x) = rhs on a slice"},
                             std::pair{"member", "Slice image membership"},
                             std::pair{"family", "Fundamental solution and degree threshold"}}) {
    auto* s = sub(name, help);
    s->add_option("--f", c.f)->required();
    s->add_option("--at", c.at)->required();
    s->add_option("--rhs", c.rhs)->required();
    if (name != std::string("member")) s->add_flag("--negative-root", c.negative_root);
  }
  {
    auto* s = sub("ivp-split", "Split a domain where the IVP criterion fails");
    s->set_help_flag("--help", "Print this help message and exit");
    s->add_option("--h", c.h)->required();
    s->add_option("--v", c.v, "parameter values in alphabetical order");
    s->add_option("--interval", c.interval, "lo,hi (use -inf/inf)");
  }
  {
    auto* s = sub("ivp-solve", "Solve f(c) = y with a < c < b");
    s->add_option("--f", c.f)->required();
    s->add_option("--a", c.a)->required();
    s->add_option("--b", c.b)->required();
    s->add_option("--y", c.target)->required();
  }
  {
    auto* s = sub("extrema", "Minimum and maximum on [a, b]");
    s->add_option("--f", c.f)->required();
    s->add_option("--a", c.a)->required();
    s->add_option("--b", c.b)->required();
  }
  {
    auto* s = sub("demo", "Counterexample sequences");
    s->add_option("name", c.x)->required();
    s->add_option("--n", c.n)->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
    s->add_option("--delta", c.delta);
    s->add_option("--point", c.point);
  }

  std::vector<const char*> argv{"fermat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage_error;
  }

  try {
    std::map<std::string, std::string> config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ParseError(0, {"readable file"}, "cannot read config '" + config_path + "'");
      std::stringstream buffer;
      buffer << in.rdbuf();
      config = parse_config(buffer.str());
    }
    Settings settings = resolve_settings(backend, precision, config, std::getenv("FERMAT_BACKEND"));
    if (settings.backend == "exact") {
      dispatch<Rational>(c, as_json, out);
    } else {
      PrecisionScope scope(settings.precision);
      dispatch<BigFloat>(c, as_json, out);
    }
    return exit_ok;
  } catch (const ParseError& e) {
    err << "error[parse]: " << e.what() << "\n";
    return exit_usage_error;
  } catch (const Error& e) {
    err << "error[" << error_name(e.code()) << "]: " << e.what() << "\n";
    return exit_domain_error;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return exit_domain_error;
  }
}

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace fermat::cli
