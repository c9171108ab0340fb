#include "oscphase/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "oscphase/amplitude.hpp"
#include "oscphase/expansion.hpp"
#include "oscphase/fresnel.hpp"
#include "oscphase/ibp.hpp"
#include "oscphase/oscillatory.hpp"
#include "oscphase/parallel.hpp"
#include "oscphase/verify.hpp"

namespace oscphase::cli {

namespace {

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// Flat record with a fixed field order.
class Record {
 public:
  Record& num(std::string key, double v) { return put(std::move(key), fmt_double(v), fmt_double(v)); }
  Record& integer(std::string key, long v) {
    const std::string s = std::to_string(v);
    return put(std::move(key), s, s);
  }
  Record& str(std::string key, const std::string& v) { return put(std::move(key), json_escape(v), v); }
  Record& boolean(std::string key, bool v) {
    return put(std::move(key), v ? "true" : "false", v ? "true" : "false");
  }
  Record& complex(const std::string& prefix, Complex z) {
    return num(prefix + "re", z.real()).num(prefix + "im", z.imag());
  }
  Record& append(const Record& other) {
    keys_.insert(keys_.end(), other.keys_.begin(), other.keys_.end());
    json_.insert(json_.end(), other.json_.begin(), other.json_.end());
    text_.insert(text_.end(), other.text_.begin(), other.text_.end());
    return *this;
  }

  std::string json_fields() const {
    std::string s;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (i) s += ",";
      s += json_escape(keys_[i]) + ":" + json_[i];
    }
    return s;
  }
  const std::vector<std::string>& keys() const { return keys_; }
  const std::vector<std::string>& text() const { return text_; }

 private:
  Record& put(std::string key, std::string json, std::string text) {
    keys_.push_back(std::move(key));
    json_.push_back(std::move(json));
    text_.push_back(std::move(text));
    return *this;
  }
  std::vector<std::string> keys_;
  std::vector<std::string> json_;
  std::vector<std::string> text_;
};

struct Document {
  Record head;
  std::vector<Record> rows;
  std::string rows_key;  // JSON array name for rows; empty means JSON Lines of rows
};

void write_csv_line(std::ostream& out, const std::vector<std::string>& a,
                    const std::vector<std::string>& b) {
  bool first = true;
  for (const auto* v : {&a, &b}) {
    for (const auto& s : *v) {
      if (!first) out << ',';
      out << csv_cell(s);
      first = false;
    }
  }
  out << '\n';
}

void emit(const Document& doc, OutputFormat format, std::ostream& out) {
  const bool lines = doc.rows_key.empty() && !doc.rows.empty();
  switch (format) {
    case OutputFormat::json:
      if (lines) {
        for (const auto& r : doc.rows) out << '{' << r.json_fields() << "}\n";
      } else {
        out << '{' << doc.head.json_fields();
        if (!doc.rows_key.empty()) {
          out << (doc.head.keys().empty() ? "" : ",") << json_escape(doc.rows_key) << ":[";
          for (std::size_t i = 0; i < doc.rows.size(); ++i) {
            out << (i ? "," : "") << '{' << doc.rows[i].json_fields() << '}';
          }
          out << ']';
        }
        out << "}\n";
      }
      break;
    case OutputFormat::csv: {
      const std::vector<std::string> none;
      const auto& head_keys = lines ? none : doc.head.keys();
      const auto& head_text = lines ? none : doc.head.text();
      if (doc.rows.empty()) {
        write_csv_line(out, head_keys, none);
        write_csv_line(out, head_text, none);
      } else {
        write_csv_line(out, head_keys, doc.rows.front().keys());
        for (const auto& r : doc.rows) write_csv_line(out, head_text, r.text());
      }
      break;
    }
    case OutputFormat::human:
      for (std::size_t i = 0; i < doc.head.keys().size(); ++i) {
        out << doc.head.keys()[i] << ": " << doc.head.text()[i] << '\n';
      }
      for (const auto& r : doc.rows) {
        out << ' ';
        for (std::size_t i = 0; i < r.keys().size(); ++i) out << ' ' << r.keys()[i] << '=' << r.text()[i];
        out << '\n';
      }
      break;
  }
}

// Typed, validated access to the raw parameter strings.
class Params {
 public:
  Params(const std::map<std::string, std::string>& raw, std::string command)
      : raw_(raw), command_(std::move(command)) {}

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string_view> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : raw_) {
      if (!ok.count(k)) throw UsageError(command_ + ": unexpected parameter --" + k);
    }
  }

  bool has(const std::string& k) const { return raw_.count(k) > 0; }
  bool flag(const std::string& k) const { return has(k) && raw_.at(k) != "0"; }

  std::string str(const std::string& k, const std::string& def) const {
    return has(k) ? raw_.at(k) : def;
  }

  double num(const std::string& k) const {
    if (!has(k)) throw UsageError(command_ + ": missing required parameter --" + k);
    return parse_double(k, raw_.at(k));
  }
  double num(const std::string& k, double def) const { return has(k) ? num(k) : def; }

  long integer(const std::string& k) const {
    if (!has(k)) throw UsageError(command_ + ": missing required parameter --" + k);
    const std::string& s = raw_.at(k);
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno != 0) {
      throw UsageError(command_ + ": --" + k + " expects an integer, got '" + s + "'");
    }
    return v;
  }
  long integer(const std::string& k, long def) const { return has(k) ? integer(k) : def; }

  std::vector<double> list(const std::string& k) const {
    std::vector<double> out;
    const std::string s = raw_.at(k);
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t comma = s.find(',', pos);
      if (comma == std::string::npos) comma = s.size();
      out.push_back(parse_double(k, s.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    return out;
  }

  Sign sign() const {
    const std::string s = str("sign", "+");
    if (s == "+" || s == "plus" || s == "+1") return Sign::plus;
    if (s == "-" || s == "minus" || s == "-1" || s == "\xE2\x88\x92") return Sign::minus;
    throw UsageError(command_ + ": --sign expects + or -, got '" + s + "'");
  }

  const std::string& command() const { return command_; }

 private:
  double parse_double(const std::string& k, const std::string& s) const {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw UsageError(command_ + ": --" + k + " expects a finite number, got '" + s + "'");
    }
    return v;
  }

  const std::map<std::string, std::string>& raw_;
  std::string command_;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

std::string sign_str(Sign s) { return std::string(1, sign_token(s)); }

using Job = std::function<Document()>;

Job prepare_fresnel(const Params& P) {
  P.allow({"mode", "p", "q", "p_im", "q_im", "sign", "continued", "m", "k", "beta"});
  const std::string mode = P.str("mode", "value");
  const Sign sign = P.sign();
  if (mode == "value") {
    const Complex p(P.num("p"), P.num("p_im", 0.0));
    const Complex q(P.num("q"), P.num("q_im", 0.0));
    require(p != Complex(0.0, 0.0), "fresnel: p must be non-zero");
    const bool continued = P.flag("continued") || p.imag() != 0.0 || q.imag() != 0.0;
    require(continued || (p.real() > 0.0 && q.real() > 0.0),
            "fresnel: p and q must be > 0 (use --continued for the analytic continuation)");
    return [=] {
      Document d;
      d.head.str("command", "fresnel").str("mode", "value");
      d.head.num("p", p.real()).num("p_im", p.imag()).num("q", q.real()).num("q_im", q.imag());
      d.head.str("sign", sign_str(sign));
      if (!continued) {
        d.head.str("kind", "value").complex("", generalized_fresnel(p.real(), q.real(), sign).value);
        return d;
      }
      const auto r = generalized_fresnel_continued(p, q, sign);
      if (const auto* v = std::get_if<FresnelValue>(&r)) {
        d.head.str("kind", "value").complex("", v->value);
      } else {
        const auto& pole = std::get<PoleReport>(r);
        d.head.str("kind", "pole").complex("location_", pole.location).integer("order", pole.order);
        d.head.complex("residue_", pole.residue);
      }
      return d;
    };
  }
  if (mode == "signed" || mode == "ctilde") {
    const long m = P.integer("m");
    const long k = P.integer("k");
    require(m >= 1, "fresnel: m must be >= 1");
    require(mode == "signed" ? k >= 1 : k >= 0, "fresnel: k out of range");
    return [=] {
      Document d;
      d.head.str("command", "fresnel").str("mode", mode).integer("m", m).integer("k", k);
      d.head.str("sign", sign_str(sign));
      const Complex v = mode == "signed" ? signed_fresnel_m(static_cast<int>(m), static_cast<int>(k), sign)
                                         : c_tilde(static_cast<int>(m), static_cast<int>(k), sign);
      d.head.complex("", v);
      return d;
    };
  }
  if (mode == "beta") {
    if (!P.has("beta")) throw UsageError("fresnel: --mode beta needs --beta p1,p2,p3,q1,q2,q3");
    const auto v = P.list("beta");
    if (v.size() != 6) throw UsageError("fresnel: --beta expects six comma separated numbers");
    require(v[0] > 0.0 && v[1] > 0.0 && v[2] > 0.0, "fresnel: p1, p2, p3 must be > 0");
    return [=] {
      Document d;
      d.head.str("command", "fresnel").str("mode", "beta");
      const char* names[] = {"p1", "p2", "p3", "q1", "q2", "q3"};
      for (int i = 0; i < 6; ++i) d.head.num(names[i], v[static_cast<std::size_t>(i)]);
      d.head.str("sign", sign_str(sign));
      d.head.complex("", generalized_beta(v[0], v[1], v[2], v[3], v[4], v[5], sign));
      return d;
    };
  }
  throw UsageError("fresnel: --mode must be value, signed, ctilde or beta");
}

QuadratureConfig read_config(const Params& P) {
  QuadratureConfig cfg;
  cfg.rel_tol = P.num("rel_tol", cfg.rel_tol);
  cfg.abs_tol = P.num("abs_tol", cfg.abs_tol);
  cfg.cutoff_radius = P.num("cutoff_r", cfg.cutoff_radius);
  cfg.tail_truncation_tol = P.num("tail_tol", cfg.tail_truncation_tol);
  cfg.max_nodes = P.integer("max_nodes", cfg.max_nodes);
  if (P.has("depth")) cfg.ibp_depth_override = static_cast<int>(P.integer("depth"));
  cfg.validate();
  return cfg;
}

Job prepare_oscint(const Params& P) {
  P.allow({"p", "q", "m", "fullline", "sign", "lambda", "amplitude", "method", "rel_tol", "abs_tol",
           "cutoff_r", "depth", "tail_tol", "max_nodes", "eps_ladder", "regularizer", "reduce_l"});
  const bool full = P.flag("fullline");
  const Sign sign = P.sign();
  const double lambda = P.num("lambda", 1.0);
  require(lambda > 0.0, "oscint: lambda must be > 0");
  const std::string method = P.str("method", "ibp");
  const QuadratureConfig cfg = read_config(P);
  const Amplitude a = builtin(P.str("amplitude", "constant_one"));
  double p = 0.0;
  double q = 1.0;
  long m = 0;
  if (full) {
    m = P.integer("m");
    require(m >= 1, "oscint: m must be >= 1");
    if (P.has("q") || P.has("p")) throw UsageError("oscint: --fullline takes --m, not --p/--q");
    p = static_cast<double>(m);
  } else {
    p = P.num("p");
    q = P.num("q", 1.0);
    require(p > 0.0, "oscint: p must be > 0");
    require(q > 0.0, "oscint: q must be > 0");
  }
  std::vector<double> ladder = default_eps_ladder();
  if (P.has("eps_ladder")) ladder = P.list("eps_ladder");
  const std::string reg_name = P.str("regularizer", "gaussian");
  if (reg_name != "gaussian" && reg_name != "rational") {
    throw UsageError("oscint: --regularizer must be gaussian or rational");
  }
  if (method != "ibp" && method != "eps" && method != "contour" && method != "reduced") {
    throw UsageError("oscint: --method must be ibp, eps, contour or reduced");
  }
  if (method == "eps") {
    require(ladder.size() >= 2, "oscint: eps ladder needs at least two values");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      require(ladder[i] > 0.0 && ladder[i] < 1.0, "oscint: eps values must lie in (0,1)");
      require(i == 0 || ladder[i] < ladder[i - 1], "oscint: eps ladder must be strictly decreasing");
    }
  }
  if (method == "contour") {
    require(!full && a.name() == "constant_one" && lambda == 1.0,
            "oscint: contour method covers the half line with constant_one and lambda = 1");
  }
  std::optional<int> reduce_l;
  if (method == "reduced") {
    require(!full, "oscint: reduced method is a half-line method");
    const DepthParams dp = ibp_depth(p, q, a.tau(), a.delta());
    reduce_l = static_cast<int>(P.integer("reduce_l", dp.l0));
    require(*reduce_l >= 0 && *reduce_l <= dp.l0, "oscint: --reduce-l must lie in [0, l0]");
  }
  ibp_depth(p, q, a.tau(), a.delta());  // ClassError before any work

  return [=] {
    Document d;
    d.head.str("command", "oscint").str("variant", full ? "fullline" : "halfline").str("method", method);
    if (full) {
      d.head.integer("m", m);
    } else {
      d.head.num("p", p).num("q", q);
    }
    d.head.str("sign", sign_str(sign)).num("lambda", lambda).str("amplitude", a.name());
    if (method == "ibp" || method == "reduced") {
      const QuadratureReport r =
          method == "reduced" ? os_integral_reduced(p, q, sign, lambda, a, *reduce_l, cfg)
          : full              ? os_integral_fullline(static_cast<int>(m), sign, lambda, a, cfg)
                              : os_integral_halfline(p, q, sign, lambda, a, cfg);
      d.head.complex("", r.value).num("est_error", r.est_error).integer("nodes_used", r.nodes_used);
      d.head.integer("ibp_depth_used", r.ibp_depth_used).num("tail_cut", r.tail_cut);
    } else if (method == "eps") {
      const Regularizer chi = reg_name == "gaussian" ? default_regularizer() : algebraic_regularizer();
      EpsilonReport r = epsilon_regularized_detailed(p, q, sign, lambda, a, chi, ladder, cfg);
      if (full) {
        const EpsilonReport left = epsilon_regularized_detailed(
            p, 1.0, times_parity(sign, static_cast<int>(m)), lambda, a.reflected(), chi, ladder, cfg);
        r.value += left.value;
        r.spread += left.spread;
        r.nodes_used += left.nodes_used;
      }
      d.head.str("regularizer", chi.name()).complex("", r.value).num("spread", r.spread);
      d.head.integer("nodes_used", r.nodes_used);
    } else {
      d.head.complex("", rotated_contour_reference(p, q, sign));
    }
    return d;
  };
}

Job prepare_expand(const Params& P) {
  P.allow({"halfline", "fullline", "stationary", "p", "m", "amplitude", "N", "sign", "lambda"});
  const int chosen = int(P.flag("halfline")) + int(P.flag("fullline")) + int(P.flag("stationary"));
  if (chosen != 1) throw UsageError("expand: pick exactly one of --halfline, --fullline, --stationary");
  const Sign sign = P.sign();
  const Amplitude a = builtin(P.str("amplitude", "constant_one"));
  const long N = P.integer("N");
  std::optional<double> lambda;
  if (P.has("lambda")) {
    lambda = P.num("lambda");
    require(*lambda >= 1.0, "expand: lambda must be >= 1");
  }
  ExpansionVariant variant = ExpansionVariant::halfline;
  double p = 0.0;
  long m = 0;
  if (P.flag("halfline")) {
    p = P.num("p");
    require(p > 0.0, "expand: p must be > 0");
    require(N >= p + 1.0, "expand: half line needs N >= p + 1");
  } else if (P.flag("fullline")) {
    variant = ExpansionVariant::fullline;
    m = P.integer("m");
    require(m >= 1, "expand: m must be >= 1");
    require(N > m, "expand: full line needs N > m");
  } else {
    variant = ExpansionVariant::stationary_quadratic;
    require(N >= 1, "expand: N must be >= 1");
  }
  return [=] {
    const ExpansionResult res =
        variant == ExpansionVariant::halfline ? expand_halfline(p, sign, a, static_cast<int>(N))
        : variant == ExpansionVariant::fullline
            ? expand_fullline(static_cast<int>(m), sign, a, static_cast<int>(N))
            : stationary_phase_quadratic(sign, a, static_cast<int>(N));
    Document d;
    d.rows_key = "terms";
    d.head.str("command", "expand").str("variant", variant_name(variant)).num("p", res.p);
    d.head.str("sign", sign_str(sign)).str("amplitude", a.name()).integer("N", N);
    d.head.num("declared_remainder_exponent", res.declared_remainder_exponent);
    if (lambda) d.head.num("lambda", *lambda).complex("partial_sum_", evaluate_expansion(res, *lambda));
    for (const auto& t : res.terms) {
      Record r;
      r.integer("k", t.k).integer("derivative_order", t.derivative_order).num("exponent", t.exponent);
      r.complex("", t.coeff);
      d.rows.push_back(std::move(r));
    }
    return d;
  };
}

Job prepare_verify(const Params& P, bool* failed) {
  P.allow({"suite"});
  const std::string suite = P.str("suite", "all");
  const auto& names = verify_suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw UsageError("verify: unknown suite '" + suite + "'");
  }
  return [=] {
    const VerifyReport rep = run_verify_suite(suite);
    *failed = !rep.passed();
    Document d;
    d.rows_key = "cases";
    d.head.str("command", "verify").str("suite", suite).boolean("passed", rep.passed());
    for (const auto& c : rep.cases) {
      Record r;
      r.str("suite", c.suite).str("name", c.name).num("measured", c.measured).num("limit", c.limit);
      r.boolean("passed", c.passed);
      d.rows.push_back(std::move(r));
    }
    return d;
  };
}

using RawParams = std::map<std::string, std::string>;

Job prepare(const std::string& command, const RawParams& raw, bool* failed);

Job prepare_sweep(const RawParams& raw) {
  const Params P(raw, "sweep");
  const std::string target = P.str("target", "oscint");
  const std::string over = P.str("over", "lambda");
  if (target != "oscint" && target != "fresnel") throw UsageError("sweep: --target must be oscint or fresnel");
  if (over != "lambda" && over != "q") throw UsageError("sweep: --over must be lambda or q");
  if (target == "fresnel" && over != "q") throw UsageError("sweep: fresnel sweeps run over q");
  const double from = P.num("from");
  const double to = P.num("to");
  const long count = P.integer("count");
  const std::string scale = P.str("scale", "lin");
  if (scale != "lin" && scale != "log") throw UsageError("sweep: --scale must be lin or log");
  require(count >= 1, "sweep: count must be >= 1");
  require(count <= 1000000, "sweep: count must be <= 1e6");
  require(scale == "lin" || (from > 0.0 && to > 0.0), "sweep: log scale needs positive bounds");

  RawParams base = raw;
  for (const char* k : {"target", "over", "from", "to", "count", "scale"}) base.erase(k);
  if (base.count(over)) throw UsageError("sweep: --" + over + " is the sweep variable");

  std::vector<double> grid(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    grid[static_cast<std::size_t>(i)] =
        scale == "lin" ? from + t * (to - from) : std::exp(std::log(from) + t * (std::log(to) - std::log(from)));
  }
  std::vector<Job> jobs;
  jobs.reserve(grid.size());
  for (const double x : grid) {
    RawParams point = base;
    point[over] = fmt_double(x);
    jobs.push_back(prepare(target, point, nullptr));
  }
  return [jobs = std::move(jobs)] {
    std::vector<Document> docs(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) { docs[i] = jobs[i](); });
    Document d;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      Record r;
      r.integer("index", static_cast<long>(i));
      d.rows.push_back(std::move(r.append(docs[i].head)));
    }
    return d;
  };
}

Job prepare(const std::string& command, const RawParams& raw, bool* failed) {
  if (command == "sweep") return prepare_sweep(raw);
  const Params P(raw, command);
  if (command == "fresnel") return prepare_fresnel(P);
  if (command == "oscint") return prepare_oscint(P);
  if (command == "expand") return prepare_expand(P);
  if (command == "verify") {
    if (!failed) throw UsageError("verify cannot be swept");
    return prepare_verify(P, failed);
  }
  throw UsageError("unknown subcommand '" + command + "'");
}

int report(std::ostream& err, const char* kind, const std::exception& e, int code) {
  err << "oscphase: " << kind << ": " << e.what() << '\n';
  return code;
}

}  // namespace

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    bool failed = false;
    const Job job = prepare(spec.subcommand, spec.params, &failed);
    const Document doc = job();
    emit(doc, spec.format, out);
    out.flush();
    return failed ? exit_code::verification_failed : exit_code::ok;
  } catch (const UsageError& e) {
    return report(err, "usage error", e, exit_code::usage);
  } catch (const UnknownAmplitude& e) {
    return report(err, "usage error", e, exit_code::usage);
  } catch (const BudgetError& e) {
    return report(err, "budget exhausted", e, exit_code::numerical);
  } catch (const ConvergenceError& e) {
    return report(err, "not converged", e, exit_code::numerical);
  } catch (const NoiseFloorError& e) {
    return report(err, "noise floor", e, exit_code::numerical);
  } catch (const Error& e) {
    return report(err, "domain error", e, exit_code::domain);
  }
}

namespace {

struct OptionDef {
  const char* name;
  bool flag;
  const char* help;
};

const std::vector<std::pair<std::string, std::vector<OptionDef>>>& command_table() {
  static const std::vector<std::pair<std::string, std::vector<OptionDef>>> table = {
      {"fresnel",
       {{"mode", false, "value | signed | ctilde | beta (default value)"},
        {"p", false, "real part of p"},
        {"q", false, "real part of q"},
        {"p-im", false, "imaginary part of p"},
        {"q-im", false, "imaginary part of q"},
        {"sign", false, "+ or -"},
        {"continued", true, "analytic continuation with pole reports"},
        {"m", false, "integer m for signed / ctilde"},
        {"k", false, "integer k for signed / ctilde"},
        {"beta", false, "p1,p2,p3,q1,q2,q3"}}},
      {"oscint",
       {{"p", false, "phase power (half line)"},
        {"q", false, "power weight x^(q-1) (default 1)"},
        {"fullline", true, "integrate over the real line"},
        {"m", false, "integer phase power (full line)"},
        {"sign", false, "+ or -"},
        {"lambda", false, "frequency (default 1)"},
        {"amplitude", false, "builtin amplitude, e.g. gaussian, rational_decay:2"},
        {"method", false, "ibp | eps | contour | reduced (default ibp)"},
        {"rel-tol", false, "relative tolerance"},
        {"abs-tol", false, "absolute tolerance"},
        {"cutoff-r", false, "cutoff radius r > 1"},
        {"depth", false, "integration-by-parts depth override"},
        {"tail-tol", false, "tail truncation tolerance"},
        {"max-nodes", false, "node budget"},
        {"eps-ladder", false, "comma separated eps values (eps method)"},
        {"regularizer", false, "gaussian | rational (eps method)"},
        {"reduce-l", false, "reduction order (reduced method)"}}},
      {"expand",
       {{"halfline", true, "half-line expansion in p"},
        {"fullline", true, "full-line expansion in m"},
        {"stationary", true, "quadratic stationary phase"},
        {"p", false, "phase power (half line)"},
        {"m", false, "integer phase power (full line)"},
        {"amplitude", false, "builtin amplitude"},
        {"N", false, "truncation order"},
        {"sign", false, "+ or -"},
        {"lambda", false, "evaluate the partial sum at this lambda"}}},
      {"verify", {{"suite", false, "fresnel | three_path | gamma_p1 | beta | continuation | remainder | all"}}},
      {"sweep",
       {{"target", false, "oscint | fresnel"},
        {"over", false, "lambda | q"},
        {"from", false, "first grid value"},
        {"to", false, "last grid value"},
        {"count", false, "number of grid points"},
        {"scale", false, "lin | log"},
        // forwarded to the target
        {"mode", false, "fresnel mode"},
        {"p", false, "phase power"},
        {"q", false, "power weight"},
        {"p-im", false, "imaginary part of p"},
        {"q-im", false, "imaginary part of q"},
        {"fullline", true, "full line"},
        {"continued", true, "analytic continuation"},
        {"m", false, "integer phase power"},
        {"sign", false, "+ or -"},
        {"lambda", false, "frequency"},
        {"amplitude", false, "builtin amplitude"},
        {"method", false, "oscint method"},
        {"rel-tol", false, "relative tolerance"},
        {"abs-tol", false, "absolute tolerance"},
        {"cutoff-r", false, "cutoff radius"},
        {"depth", false, "depth override"},
        {"tail-tol", false, "tail truncation tolerance"},
        {"max-nodes", false, "node budget"},
        {"eps-ladder", false, "eps values"},
        {"regularizer", false, "gaussian | rational"},
        {"reduce-l", false, "reduction order"}}},
  };
  return table;
}

std::string key_of(std::string name) {
  for (char& c : name) {
    if (c == '-') c = '_';
  }
  return name;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Fresnel integrals and oscillatory integrals with power phase"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "json | csv | human")->check(CLI::IsMember({"json", "csv", "human"}));

  struct Slot {
    std::string key;
    CLI::Option* opt;
    bool flag;
    std::string value;
  };
  std::map<std::string, std::vector<Slot>> slots;
  for (const auto& [name, defs] : command_table()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->fallthrough();
    auto& list = slots[name];
    list.reserve(defs.size());
    for (const auto& def : defs) list.push_back({key_of(def.name), nullptr, def.flag, {}});
    for (std::size_t i = 0; i < defs.size(); ++i) {
      const std::string flag_name = "--" + std::string(defs[i].name);
      list[i].opt = defs[i].flag ? sub->add_flag(flag_name, defs[i].help)
                                 : sub->add_option(flag_name, list[i].value, defs[i].help);
      if (!defs[i].flag) list[i].opt->allow_extra_args(false);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? exit_code::ok : exit_code::usage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? exit_code::ok : exit_code::usage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code::usage;
  }

  RunSpec spec;
  spec.format = format == "csv" ? OutputFormat::csv : format == "human" ? OutputFormat::human : OutputFormat::json;
  for (auto& [name, list] : slots) {
    if (!app.got_subcommand(name)) continue;
    spec.subcommand = name;
    for (const auto& s : list) {
      if (s.opt->count() == 0) continue;
      spec.params[s.key] = s.flag ? "1" : s.value;
    }
  }
  return run(spec, out, err);
}

}  // namespace oscphase::cli
