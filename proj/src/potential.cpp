#include "armchair/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "armchair/errors.hpp"
#include "json.hpp"

namespace armchair {

namespace {

constexpr double kGeomTol = 1e-14;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool all_zero(const std::vector<double>& c) {
  for (double v : c)
    if (v != 0.0) return false;
  return true;
}

// p(1-t) expanded in powers of t.
std::vector<double> mirror_coeffs(const std::vector<double>& c) {
  std::vector<double> out(c.size(), 0.0);
  // binomial table up to deg
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < n; ++i) {
    // c_i (1-t)^i = c_i Σ_j C(i,j) (-1)^j t^j
    double binom = 1.0;
    for (int j = 0; j <= i; ++j) {
      out[j] += c[i] * binom * ((j % 2) ? -1.0 : 1.0);
      binom = binom * (i - j) / (j + 1);
    }
  }
  return out;
}

struct Tok {
  std::string text;
  int line;
  int col;
};

std::vector<std::vector<Tok>> tokenize(const std::string& text) {
  std::vector<std::vector<Tok>> lines;
  std::vector<Tok> cur;
  int line = 1, col = 1;
  std::string word;
  int wcol = 1;
  bool comment = false;
  auto flush_word = [&]() {
    if (!word.empty()) {
      cur.push_back({word, line, wcol});
      word.clear();
    }
  };
  auto flush_line = [&]() {
    flush_word();
    if (!cur.empty()) lines.push_back(std::move(cur));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == '\n' || ch == ';') {
      flush_line();
      if (ch == '\n') {
        ++line;
        col = 0;
      }
      comment = false;
    } else if (comment) {
      // skip
    } else if (ch == '#') {
      flush_word();
      comment = true;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      flush_word();
    } else {
      if (word.empty()) wcol = col;
      word.push_back(ch);
    }
    ++col;
  }
  flush_line();
  return lines;
}

[[noreturn]] void fail_at(const Tok& t, const std::string& msg) {
  std::ostringstream os;
  os << "potential spec error at line " << t.line << ", column " << t.col
     << ": " << msg << " (near '" << t.text << "')";
  throw parse_error(os.str());
}

double parse_real(const Tok& t, const std::string& what) {
  const char* s = t.text.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0') fail_at(t, "expected a real number for " + what);
  if (!std::isfinite(v)) fail_at(t, what + " is not finite");
  return v;
}

int parse_int(const Tok& t, const std::string& what) {
  const char* s = t.text.c_str();
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0') fail_at(t, "expected an integer for " + what);
  return static_cast<int>(v);
}

// "key=value" with a required key.
Tok split_kv(const Tok& t, const std::string& key) {
  auto pos = t.text.find('=');
  if (pos == std::string::npos || t.text.substr(0, pos) != key)
    fail_at(t, "expected " + key + "=<value>");
  Tok v = t;
  v.text = t.text.substr(pos + 1);
  v.col += static_cast<int>(pos) + 1;
  return v;
}

}  // namespace

Potential Potential::zero() {
  Potential p;
  p.segments_.push_back({0.0, 1.0, {0.0}});
  p.validate();
  return p;
}

Potential::Potential(std::vector<PolySegment> segments,
                     std::vector<DeltaTerm> deltas)
    : segments_(std::move(segments)), deltas_(std::move(deltas)) {
  if (segments_.empty()) segments_.push_back({0.0, 1.0, {0.0}});
  std::sort(segments_.begin(), segments_.end(),
            [](const PolySegment& x, const PolySegment& y) { return x.t_lo < y.t_lo; });
  std::sort(deltas_.begin(), deltas_.end(),
            [](const DeltaTerm& x, const DeltaTerm& y) { return x.a < y.a; });
  validate();
}

void Potential::validate() const {
  if (std::abs(segments_.front().t_lo) > kGeomTol)
    throw parse_error("density segments must start at t=0 (coverage gap at the left end)");
  if (std::abs(segments_.back().t_hi - 1.0) > kGeomTol)
    throw parse_error("density segments must end at t=1 (coverage gap at the right end)");
  for (size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!(s.t_lo < s.t_hi))
      throw parse_error("density segment has t_lo >= t_hi");
    if (i + 1 < segments_.size()) {
      double gap = segments_[i + 1].t_lo - s.t_hi;
      if (std::abs(gap) > kGeomTol)
        throw parse_error(gap > 0 ? "gap between density segments"
                                  : "overlapping density segments");
    }
  }
  for (size_t i = 0; i < deltas_.size(); ++i) {
    const auto& d = deltas_[i];
    // keep a clear margin from the vertices so the derivative jump cannot
    // merge into an endpoint breakpoint
    if (!(d.a > 1e-12 && d.a < 1.0 - 1e-12))
      throw parse_error("delta position must lie strictly inside (0,1)");
    if (!std::isfinite(d.g)) throw parse_error("delta coupling is not finite");
    if (i > 0 && deltas_[i].a - deltas_[i - 1].a <= kGeomTol)
      throw parse_error("delta positions must be strictly increasing");
  }
}

Potential Potential::parse(const std::string& text) {
  std::vector<PolySegment> segments;
  std::vector<DeltaTerm> deltas;
  bool saw_zero = false;

  auto lines = tokenize(text);
  for (const auto& toks : lines) {
    const Tok& head = toks[0];
    if (head.text == "zero") {
      if (toks.size() != 1) fail_at(toks[1], "'zero' takes no arguments");
      saw_zero = true;
    } else if (head.text == "poly") {
      if (toks.size() < 3) fail_at(head, "'poly' needs a range and coefficients");
      const Tok& range = toks[1];
      if (range.text.size() < 5 || range.text.front() != '[' ||
          range.text.back() != ']')
        fail_at(range, "expected range of the form [t_lo,t_hi]");
      auto comma = range.text.find(',');
      if (comma == std::string::npos) fail_at(range, "expected ',' in range");
      Tok lo = range, hi = range;
      lo.text = range.text.substr(1, comma - 1);
      hi.text = range.text.substr(comma + 1, range.text.size() - comma - 2);
      PolySegment seg;
      seg.t_lo = parse_real(lo, "t_lo");
      seg.t_hi = parse_real(hi, "t_hi");
      for (size_t i = 2; i < toks.size(); ++i)
        seg.coeffs.push_back(parse_real(toks[i], "polynomial coefficient"));
      segments.push_back(std::move(seg));
    } else if (head.text == "delta") {
      if (toks.size() != 3) fail_at(head, "'delta' needs g=<real> a=<real>");
      DeltaTerm d;
      d.g = parse_real(split_kv(toks[1], "g"), "g");
      d.a = parse_real(split_kv(toks[2], "a"), "a");
      deltas.push_back(d);
    } else if (head.text == "delta_family") {
      if (toks.size() != 5)
        fail_at(head, "'delta_family' needs v=<real> eps=<real> k=<int> N=<int>");
      double v = parse_real(split_kv(toks[1], "v"), "v");
      double eps = parse_real(split_kv(toks[2], "eps"), "eps");
      int k = parse_int(split_kv(toks[3], "k"), "k");
      int N = parse_int(split_kv(toks[4], "N"), "N");
      Potential fam = delta_family(v, eps, k, N);
      deltas.push_back(fam.deltas().front());
    } else {
      fail_at(head, "unknown directive");
    }
  }

  if (saw_zero && !segments.empty())
    throw parse_error("'zero' cannot be combined with 'poly' segments");
  return Potential(std::move(segments), std::move(deltas));
}

Potential Potential::delta_family(double v, double eps, int k, int N) {
  if (v == 0.0) throw parse_error("delta_family requires v != 0");
  if (N < 1 || k < 0 || k >= N)
    throw parse_error("delta_family requires N >= 1 and 0 <= k < N");
  double ck = std::cos(M_PI * k / N);
  double a = 0.5 + ck * eps + eps * eps;
  if (!(a > 0.0 && a < 1.0))
    throw parse_error("delta_family position 1/2 + c_k*eps + eps^2 falls outside (0,1)");
  return Potential({}, {DeltaTerm{1.0 / v, a}});
}

double Potential::density(double t) const {
  for (const auto& s : segments_) {
    if (t >= s.t_lo && (t < s.t_hi || (&s == &segments_.back() && t <= s.t_hi))) {
      double acc = 0.0;
      for (size_t i = s.coeffs.size(); i-- > 0;) acc = acc * t + s.coeffs[i];
      return acc;
    }
  }
  return 0.0;
}

std::vector<double> Potential::breakpoints() const {
  std::vector<double> b;
  for (const auto& s : segments_) {
    b.push_back(s.t_lo);
    b.push_back(s.t_hi);
  }
  for (const auto& d : deltas_) b.push_back(d.a);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(),
                      [](double x, double y) { return std::abs(x - y) <= kGeomTol; }),
          b.end());
  b.front() = 0.0;
  b.back() = 1.0;
  return b;
}

double Potential::density_bound() const {
  double m = 0.0;
  for (const auto& s : segments_) {
    double acc = 0.0;
    for (double c : s.coeffs) acc += std::abs(c);
    m = std::max(m, acc);
  }
  return m;
}

double Potential::total_coupling() const {
  double g = 0.0;
  for (const auto& d : deltas_) g += std::abs(d.g);
  return g;
}

double Potential::lower_spectral_bound() const {
  double G = total_coupling();
  return -(density_bound() + G * G + G + 5.0);
}

bool Potential::is_even(double tol) const {
  // Refine both partitions to common breakpoints, then compare each piece
  // against the mirror of the piece covering the reflected interval.
  std::vector<double> cuts;
  for (const auto& s : segments_) {
    cuts.push_back(s.t_lo);
    cuts.push_back(s.t_hi);
    cuts.push_back(1.0 - s.t_lo);
    cuts.push_back(1.0 - s.t_hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::abs(x - y) <= kGeomTol; }),
             cuts.end());

  auto segment_at = [&](double t) -> const PolySegment& {
    for (const auto& s : segments_)
      if (t >= s.t_lo - kGeomTol && t <= s.t_hi + kGeomTol) return s;
    return segments_.back();
  };

  double cscale = 1.0;
  for (const auto& s : segments_)
    for (double c : s.coeffs) cscale = std::max(cscale, std::abs(c));

  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const auto& own = segment_at(mid);
    const auto& mir = segment_at(1.0 - mid);
    auto m = mirror_coeffs(mir.coeffs);
    size_t n = std::max(own.coeffs.size(), m.size());
    for (size_t j = 0; j < n; ++j) {
      double a = j < own.coeffs.size() ? own.coeffs[j] : 0.0;
      double b = j < m.size() ? m[j] : 0.0;
      if (std::abs(a - b) > tol * cscale) return false;
    }
  }

  // Deltas: (g,a) must pair with (g,1-a); a=1/2 pairs with itself.
  std::vector<char> used(deltas_.size(), 0);
  for (size_t i = 0; i < deltas_.size(); ++i) {
    if (used[i]) continue;
    const auto& d = deltas_[i];
    if (std::abs(d.a - 0.5) <= tol) {
      used[i] = 1;
      continue;
    }
    bool found = false;
    for (size_t j = 0; j < deltas_.size(); ++j) {
      if (used[j] || j == i) continue;
      if (std::abs(deltas_[j].a - (1.0 - d.a)) <= tol &&
          std::abs(deltas_[j].g - d.g) <= tol * (1.0 + std::abs(d.g))) {
        used[i] = used[j] = 1;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::string Potential::serialize() const {
  std::ostringstream os;
  bool zero_density =
      segments_.size() == 1 && all_zero(segments_.front().coeffs) &&
      std::abs(segments_.front().t_lo) <= kGeomTol &&
      std::abs(segments_.front().t_hi - 1.0) <= kGeomTol;
  if (zero_density) {
    if (deltas_.empty()) os << "zero\n";
  } else {
    for (const auto& s : segments_) {
      os << "poly [" << fmt17(s.t_lo) << "," << fmt17(s.t_hi) << "]";
      for (double c : s.coeffs) os << " " << fmt17(c);
      if (s.coeffs.empty()) os << " 0";
      os << "\n";
    }
  }
  for (const auto& d : deltas_)
    os << "delta g=" << fmt17(d.g) << " a=" << fmt17(d.a) << "\n";
  return os.str();
}

std::string Potential::to_json() const {
  nlohmann::ordered_json j;
  j["segments"] = nlohmann::ordered_json::array();
  for (const auto& s : segments_) {
    nlohmann::ordered_json seg;
    seg["t_lo"] = s.t_lo;
    seg["t_hi"] = s.t_hi;
    seg["coeffs"] = s.coeffs.empty() ? std::vector<double>{0.0} : s.coeffs;
    j["segments"].push_back(seg);
  }
  j["deltas"] = nlohmann::ordered_json::array();
  for (const auto& d : deltas_) {
    nlohmann::ordered_json dd;
    dd["g"] = d.g;
    dd["a"] = d.a;
    j["deltas"].push_back(dd);
  }
  return j.dump();
}

Potential Potential::from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("potential JSON parse error: ") + e.what());
  }
  std::vector<PolySegment> segments;
  std::vector<DeltaTerm> deltas;
  if (j.contains("segments"))
    for (const auto& s : j["segments"])
      segments.push_back(
          {s.at("t_lo").get<double>(), s.at("t_hi").get<double>(),
           s.value("coeffs", std::vector<double>{0.0})});
  if (j.contains("deltas"))
    for (const auto& d : j["deltas"])
      deltas.push_back({d.at("g").get<double>(), d.at("a").get<double>()});
  return Potential(std::move(segments), std::move(deltas));
}

bool Potential::operator==(const Potential& o) const {
  auto canon = [](const Potential& p) {
    std::vector<PolySegment> segs = p.segments_;
    for (auto& s : segs) {
      while (!s.coeffs.empty() && s.coeffs.back() == 0.0) s.coeffs.pop_back();
    }
    return segs;
  };
  auto a = canon(*this), b = canon(o);
  if (a.size() != b.size() || deltas_.size() != o.deltas_.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].t_lo != b[i].t_lo || a[i].t_hi != b[i].t_hi ||
        a[i].coeffs != b[i].coeffs)
      return false;
  for (size_t i = 0; i < deltas_.size(); ++i)
    if (deltas_[i].g != o.deltas_[i].g || deltas_[i].a != o.deltas_[i].a)
      return false;
  return true;
}

}  // namespace armchair
