#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fln/parser.hpp"
#include "fln/signature.hpp"
#include "fln/truth_value.hpp"

namespace fln {

/// Piecewise-linear truth function through rational breakpoints; x runs
/// strictly increasing from 0 to 1.
class HedgeFunction {
public:
  struct Point {
    TruthValue x;
    TruthValue y;
    friend bool operator==(const Point&, const Point&) = default;
  };

  HedgeFunction() : HedgeFunction(std::vector<Point>{{TruthValue::zero(), TruthValue::zero()},
                                                    {TruthValue::one(), TruthValue::one()}}) {}

  explicit HedgeFunction(std::vector<Point> pts) : pts_(std::move(pts)) {
    if (pts_.size() < 2) throw RangeError("a hedge function needs at least two breakpoints");
    if (!pts_.front().x.is_zero() || !pts_.back().x.is_one())
      throw RangeError("hedge breakpoints must start at x=0 and end at x=1");
    for (std::size_t i = 1; i < pts_.size(); ++i)
      if (!(pts_[i - 1].x < pts_[i].x)) throw RangeError("hedge breakpoint x-coordinates must increase strictly");
  }

  static HedgeFunction identity() { return HedgeFunction(); }

  /// x^2 sampled at the quarter points.
  static HedgeFunction pl_square() {
    return HedgeFunction({{TruthValue(0, 1), TruthValue(0, 1)},
                          {TruthValue(1, 4), TruthValue(1, 16)},
                          {TruthValue(1, 2), TruthValue(1, 4)},
                          {TruthValue(3, 4), TruthValue(9, 16)},
                          {TruthValue(1, 1), TruthValue(1, 1)}});
  }

  /// Inverse of pl_square: sqrt with exact values at y = 0, 1/4, ..., 1.
  static HedgeFunction pl_sqrt() {
    return HedgeFunction({{TruthValue(0, 1), TruthValue(0, 1)},
                          {TruthValue(1, 16), TruthValue(1, 4)},
                          {TruthValue(1, 4), TruthValue(1, 2)},
                          {TruthValue(9, 16), TruthValue(3, 4)},
                          {TruthValue(1, 1), TruthValue(1, 1)}});
  }

  /// (1-λ)·x + λ·g(x); same breakpoints as g.
  static HedgeFunction blend(const HedgeFunction& g, const TruthValue& lambda) {
    std::vector<Point> pts;
    for (const auto& p : g.pts_) {
      Rational y = (1 - lambda.rational()) * p.x.rational() + lambda.rational() * p.y.rational();
      pts.push_back({p.x, TruthValue(y)});
    }
    return HedgeFunction(std::move(pts));
  }

  static HedgeFunction preset(const std::string& name) {
    if (name == "identity") return identity();
    if (name == "pl-square") return pl_square();
    if (name == "pl-sqrt") return pl_sqrt();
    throw SymbolError("unknown hedge preset '" + name + "'");
  }

  TruthValue operator()(const TruthValue& a) const {
    auto it = std::upper_bound(pts_.begin(), pts_.end(), a,
                               [](const TruthValue& v, const Point& p) { return v < p.x; });
    if (it == pts_.end()) return pts_.back().y;
    const Point& hi = *it;
    const Point& lo = *(it - 1);
    if (lo.x == a) return lo.y;
    Rational t = (a.rational() - lo.x.rational()) / (hi.x.rational() - lo.x.rational());
    return TruthValue(Rational(lo.y.rational() + t * (hi.y.rational() - lo.y.rational())));
  }

  const std::vector<Point>& breakpoints() const { return pts_; }

  bool is_identity() const {
    return std::all_of(pts_.begin(), pts_.end(), [](const Point& p) { return p.x == p.y; });
  }

  friend bool operator==(const HedgeFunction&, const HedgeFunction&) = default;

private:
  std::vector<Point> pts_;
};

inline TruthValue eval_hedge(const HedgeFunction& f, const TruthValue& a) { return f(a); }

struct Violation {
  std::string property;
  std::string subject;
  std::vector<TruthValue> inputs;
  TruthValue value;
};

inline std::string format_inputs(const std::vector<TruthValue>& in) {
  std::string s = "(";
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (i) s += ", ";
    s += in[i].str();
  }
  return s + ")";
}

/// `VIOLATION <property> <inputs> <value> <subject>`
inline std::string format_violation(const Violation& v) {
  std::string s = "VIOLATION " + v.property + " " + format_inputs(v.inputs) + " " + v.value.str();
  if (!v.subject.empty()) s += " " + v.subject;
  return s;
}

struct ValidationReport {
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }

  void add(std::string property, std::string subject, std::vector<TruthValue> inputs, TruthValue value) {
    violations.push_back({std::move(property), std::move(subject), std::move(inputs), std::move(value)});
  }

  void append(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }

  bool has(const std::string& property) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.property == property; });
  }
};

/// Exact shape check at the breakpoints: non-decreasing, f(0)=0, f(1)=1, and
/// subdiagonal (stresser) or superdiagonal (depresser). Between breakpoints f
/// and the diagonal are both linear, so breakpoints decide every property.
inline ValidationReport validate_shape(const HedgeFunction& f, HedgeKind kind, const std::string& subject = {}) {
  ValidationReport r;
  const auto& p = f.breakpoints();
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i].y < p[i - 1].y) r.add("non-decreasing", subject, {p[i - 1].x, p[i].x}, p[i].y);
  if (!p.front().y.is_zero()) r.add("preserves-0", subject, {p.front().x}, p.front().y);
  if (!p.back().y.is_one()) r.add("preserves-1", subject, {p.back().x}, p.back().y);
  for (const auto& pt : p) {
    if (kind == HedgeKind::Stresser && pt.y > pt.x) r.add("subdiagonal", subject, {pt.x}, pt.y);
    if (kind == HedgeKind::Depresser && pt.y < pt.x) r.add("superdiagonal", subject, {pt.x}, pt.y);
  }
  return r;
}

/// Smallest positive k with |f(a) - f(b)| <= k·|a - b| everywhere, i.e. the
/// ceiling of the steepest segment slope (at least 1).
inline int fitting_constant(const HedgeFunction& f) {
  const auto& p = f.breakpoints();
  Rational steepest = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    Rational slope = (p[i].y.rational() - p[i - 1].y.rational()) / (p[i].x.rational() - p[i - 1].x.rational());
    slope = abs(slope);
    if (slope > steepest) steepest = slope;
  }
  mpz_class k;
  mpz_cdiv_q(k.get_mpz_t(), steepest.get_num_mpz_t(), steepest.get_den_mpz_t());
  return std::max(1, static_cast<int>(k.get_si()));
}

/// Truth functions for every hedge of a signature.
class HedgeModel {
public:
  HedgeModel() = default;

  HedgeModel(HedgeSignature sig, std::map<std::string, HedgeFunction> fns)
      : sig_(std::move(sig)), fns_(std::move(fns)) {
    sig_.validate();
    for (const auto& h : sig_.all())
      if (!fns_.count(h)) throw SymbolError("hedge '" + h + "' has no truth function");
    for (const auto& [name, _] : fns_)
      if (!sig_.contains(name)) throw SymbolError("truth function given for undeclared hedge '" + name + "'");
  }

  static HedgeModel identity(const HedgeSignature& sig) {
    std::map<std::string, HedgeFunction> fns;
    for (const auto& h : sig.all()) fns.emplace(h, HedgeFunction::identity());
    return HedgeModel(sig, std::move(fns));
  }

  const HedgeSignature& signature() const { return sig_; }
  const std::map<std::string, HedgeFunction>& functions() const { return fns_; }

  const HedgeFunction& at(const std::string& name) const {
    auto it = fns_.find(name);
    if (it == fns_.end()) throw SymbolError("no truth function for hedge '" + name + "'");
    return it->second;
  }

  TruthValue apply(const std::string& name, const TruthValue& a) const { return at(name)(a); }

  /// s_i for i in 0..p, with s_0 the identity.
  TruthValue stresser(std::size_t i, const TruthValue& a) const {
    return i == 0 ? a : at(sig_.stressers.at(i - 1))(a);
  }
  TruthValue depresser(std::size_t j, const TruthValue& a) const {
    return j == 0 ? a : at(sig_.depressers.at(j - 1))(a);
  }

private:
  HedgeSignature sig_;
  std::map<std::string, HedgeFunction> fns_;
};

/// Evaluates every hedge axiom at truth constants drawn from the chain and
/// records each instance whose value is below 1.
///   mode H:  H6 (A->B)->(hA->hB), H7 s_i A -> s_{i-1} A, H8 s_p #1,
///            H9 d_{j-1} A -> d_j A, H10 ~d_q #0
///   mode DH: DH11..DH14 as H6..H9, DH15 d_i A -> ~s_i ~A
inline ValidationReport validate_axioms(const HedgeModel& model, const MVChain& chain) {
  ValidationReport r;
  const auto& sig = model.signature();
  const bool dh = sig.mode == HedgeMode::DH;
  const auto vals = chain.values();
  const std::size_t p = sig.stressers.size(), q = sig.depressers.size();

  for (const auto& h : sig.all()) {
    const auto& f = model.at(h);
    std::vector<TruthValue> fv;
    for (const auto& a : vals) fv.push_back(f(a));
    for (std::size_t i = 0; i < vals.size(); ++i)
      for (std::size_t j = 0; j < vals.size(); ++j) {
        TruthValue v = luk_imp(luk_imp(vals[i], vals[j]), luk_imp(fv[i], fv[j]));
        if (!v.is_one()) r.add(dh ? "DH11" : "H6", h, {vals[i], vals[j]}, v);
      }
  }
  for (std::size_t i = 1; i <= p; ++i)
    for (const auto& a : vals) {
      TruthValue v = luk_imp(model.stresser(i, a), model.stresser(i - 1, a));
      if (!v.is_one()) r.add(dh ? "DH12" : "H7", sig.stressers[i - 1], {a}, v);
    }
  if (p > 0) {
    TruthValue v = model.stresser(p, TruthValue::one());
    if (!v.is_one()) r.add(dh ? "DH13" : "H8", sig.stressers[p - 1], {TruthValue::one()}, v);
  }
  for (std::size_t j = 1; j <= q; ++j)
    for (const auto& a : vals) {
      TruthValue v = luk_imp(model.depresser(j - 1, a), model.depresser(j, a));
      if (!v.is_one()) r.add(dh ? "DH14" : "H9", sig.depressers[j - 1], {a}, v);
    }
  if (!dh && q > 0) {
    TruthValue v = luk_neg(model.depresser(q, TruthValue::zero()));
    if (!v.is_one()) r.add("H10", sig.depressers[q - 1], {TruthValue::zero()}, v);
  }
  if (dh) {
    for (std::size_t i = 1; i <= p; ++i)
      for (const auto& a : vals) {
        TruthValue v = luk_imp(model.depresser(i, a), luk_neg(model.stresser(i, luk_neg(a))));
        if (!v.is_one()) r.add("DH15", sig.depressers[i - 1], {a}, v);
      }
  }
  return r;
}

/// Shape checks for every hedge according to its kind.
inline ValidationReport validate_shapes(const HedgeModel& model) {
  ValidationReport r;
  for (const auto& h : model.signature().stressers) r.append(validate_shape(model.at(h), HedgeKind::Stresser, h));
  for (const auto& h : model.signature().depressers) r.append(validate_shape(model.at(h), HedgeKind::Depresser, h));
  return r;
}

struct EnvelopeRow {
  TruthValue x;
  TruthValue lower;
  TruthValue upper;
  TruthValue value;  // the configured function at x
};

struct Envelope {
  std::string hedge;
  std::vector<EnvelopeRow> rows;
};

struct BoundaryReport {
  std::vector<Envelope> envelopes;
  ValidationReport report;
};

/// Lower/upper envelopes of every hedge function in a dual-hedge model:
///   s_i in [s_{i+1}(x), x] for i < n, s_n in [0, x],
///   d_1 in [x, ~s_1(~x)], d_i in [d_{i-1}(x), ~s_i(~x)].
/// Rows are tabulated on the chain; breaches are checked exactly on [0,1].
inline BoundaryReport boundaries(const HedgeModel& model, const MVChain& chain) {
  const auto& sig = model.signature();
  if (sig.mode != HedgeMode::DH) throw Error("hedge boundaries need mode dh (dual pairs)");
  const std::size_t n = sig.stressers.size();
  BoundaryReport out;

  auto check = [&](const std::string& name, auto lower, auto upper,
                   const std::vector<const HedgeFunction*>& involved, bool reflect_upper) {
    const HedgeFunction& f = model.at(name);
    Envelope env{name, {}};
    for (const auto& x : chain.values()) env.rows.push_back({x, lower(x), upper(x), f(x)});
    out.envelopes.push_back(std::move(env));

    std::set<TruthValue> pts;
    for (const auto& x : chain.values()) pts.insert(x);
    for (const auto& b : f.breakpoints()) pts.insert(b.x);
    for (std::size_t k = 0; k < involved.size(); ++k)
      for (const auto& b : involved[k]->breakpoints())
        pts.insert((reflect_upper && k + 1 == involved.size()) ? luk_neg(b.x) : b.x);
    for (const auto& x : pts) {
      TruthValue v = f(x);
      if (v < lower(x)) out.report.add("ENVELOPE-LOWER", name, {x}, v);
      if (v > upper(x)) out.report.add("ENVELOPE-UPPER", name, {x}, v);
    }
  };

  for (std::size_t i = 1; i <= n; ++i) {
    const std::string& name = sig.stressers[i - 1];
    if (i < n) {
      const HedgeFunction* next = &model.at(sig.stressers[i]);
      check(name, [next](const TruthValue& x) { return (*next)(x); }, [](const TruthValue& x) { return x; },
            {next}, false);
    } else {
      check(name, [](const TruthValue&) { return TruthValue::zero(); }, [](const TruthValue& x) { return x; },
            {}, false);
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string& name = sig.depressers[i - 1];
    const HedgeFunction* dual = &model.at(sig.stressers[i - 1]);
    auto upper = [dual](const TruthValue& x) { return luk_neg((*dual)(luk_neg(x))); };
    if (i == 1) {
      check(name, [](const TruthValue& x) { return x; }, upper, {dual}, true);
    } else {
      const HedgeFunction* prev = &model.at(sig.depressers[i - 2]);
      check(name, [prev](const TruthValue& x) { return (*prev)(x); }, upper, {prev, dual}, true);
    }
  }
  return out;
}

namespace detail {

inline HedgeFunction parse_pl_body(const std::string& body, std::size_t lineno) {
  auto where = "line " + std::to_string(lineno) + ": ";
  auto open = body.find('{'), close = body.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ParseError(where + "expected pl { (x,y) ... }", 0);
  std::string inner = body.substr(open + 1, close - open - 1);
  std::vector<HedgeFunction::Point> pts;
  std::size_t i = 0;
  while (true) {
    i = inner.find_first_not_of(" \t", i);
    if (i == std::string::npos) break;
    if (inner[i] != '(') throw ParseError(where + "expected '(' in breakpoint list", open + 1 + i);
    auto end = inner.find(')', i);
    if (end == std::string::npos) throw ParseError(where + "unclosed breakpoint", open + 1 + i);
    std::string pair = inner.substr(i + 1, end - i - 1);
    auto comma = pair.find(',');
    if (comma == std::string::npos) throw ParseError(where + "breakpoint needs x,y", open + 1 + i);
    pts.push_back({TruthValue::parse(strip_comment(pair.substr(0, comma))),
                   TruthValue::parse(strip_comment(pair.substr(comma + 1)))});
    i = end + 1;
  }
  return HedgeFunction(std::move(pts));
}

inline bool numbered(const std::string& name, char prefix, int& index) {
  if (name.size() < 2 || name[0] != prefix) return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  index = std::stoi(name.substr(1));
  return true;
}

}  // namespace detail

/// Hedge-model file: signature header (`mode`, optional `stressers` /
/// `depressers`), then one assignment per hedge:
///   s1 = identity | s1 = preset pl-square | s1 = blend 1/2 pl-square
///   s1 = pl { (0,0) (1/4,1/16) ... (1,1) }
/// Without explicit lists, hedges must be named s<i>/d<j>.
inline HedgeModel parse_hedge_model(std::string_view text) {
  HedgeSignature sig;
  bool listed = false;
  std::map<std::string, HedgeFunction> fns;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    if (apply_signature_line(line, sig)) {
      if (line.rfind("mode", 0) != 0) listed = true;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected '<hedge> = <function>'", 0);
    std::string name = strip_comment(line.substr(0, eq));
    std::string rhs = strip_comment(line.substr(eq + 1));
    std::istringstream words(rhs);
    std::string kind;
    words >> kind;
    HedgeFunction fn;
    if (kind == "identity") {
      fn = HedgeFunction::identity();
    } else if (kind == "preset") {
      std::string p;
      words >> p;
      fn = HedgeFunction::preset(p);
    } else if (kind == "blend") {
      std::string lambda, p;
      words >> lambda >> p;
      fn = HedgeFunction::blend(HedgeFunction::preset(p), TruthValue::parse(lambda));
    } else if (kind == "pl") {
      fn = detail::parse_pl_body(rhs, lineno);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown hedge function '" + kind + "'", eq + 1);
    }
    if (!fns.emplace(name, fn).second) throw SymbolError("hedge '" + name + "' assigned twice");
  }
  if (!listed) {
    std::map<int, std::string> s, d;
    for (const auto& [name, _] : fns) {
      int idx = 0;
      if (detail::numbered(name, 's', idx)) s.emplace(idx, name);
      else if (detail::numbered(name, 'd', idx)) d.emplace(idx, name);
      else throw SymbolError("cannot tell whether '" + name + "' is a stresser or depresser; list it in the header");
    }
    sig.stressers.clear();
    sig.depressers.clear();
    for (const auto& [_, n] : s) sig.stressers.push_back(n);
    for (const auto& [_, n] : d) sig.depressers.push_back(n);
  }
  return HedgeModel(sig, std::move(fns));
}

inline std::string print_hedge_function(const HedgeFunction& f) {
  if (f.is_identity() && f.breakpoints().size() == 2) return "identity";
  std::string s = "pl {";
  for (const auto& p : f.breakpoints()) s += " (" + p.x.str() + "," + p.y.str() + ")";
  return s + " }";
}

inline std::string print_hedge_model(const HedgeModel& m) {
  std::string out = print_signature(m.signature());
  for (const auto& h : m.signature().all()) out += h + " = " + print_hedge_function(m.at(h)) + "\n";
  return out;
}

}  // namespace fln
