#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

std::vector<int> digits(std::size_t code, std::size_t radix, std::size_t length) {
  std::vector<int> d(length);
  for (std::size_t k = length; k-- > 0;) {
    d[k] = static_cast<int>(code % radix);
    code /= radix;
  }
  return d;
}

double h2(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p) / std::log(2.0);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p) / std::log(2.0);
  return h;
}

double path_sum_law(const dimac::FsMac& channel, const std::vector<double>& s0_weights,
                    const std::vector<int>& x1, const std::vector<int>& x2,
                    const std::vector<int>& y) {
  const std::size_t ns = channel.states().size();
  const std::size_t n = y.size();
  std::function<double(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t s) {
    if (i == n) return 1.0;
    double acc = 0.0;
    for (std::size_t t = 0; t < ns; ++t) {
      const double p = channel.prob(x1[i], x2[i], s, y[i], t);
      if (p > 0.0) acc += p * go(i + 1, t);
    }
    return acc;
  };
  double total = 0.0;
  for (std::size_t s = 0; s < ns; ++s) {
    if (s0_weights[s] > 0.0) total += s0_weights[s] * go(0, s);
  }
  return total;
}

std::vector<Outcome> brute_joint(const dimac::FsMac& channel, const dimac::InputPolicies& policies,
                                 const std::vector<double>& s0_weights, std::size_t n) {
  std::map<std::vector<int>, double> acc;
  const std::size_t ns = channel.states().size();
  const int a1 = static_cast<int>(channel.in1().size());
  const int a2 = static_cast<int>(channel.in2().size());
  const int ay = static_cast<int>(channel.out().size());
  std::vector<int> x1, x2, y, z1, z2;
  std::function<void(std::size_t, std::size_t, double)> go = [&](std::size_t i, std::size_t s,
                                                                 double p) {
    if (p == 0.0) return;
    if (i == n) {
      std::vector<int> key = x1;
      key.insert(key.end(), x2.begin(), x2.end());
      key.insert(key.end(), y.begin(), y.end());
      acc[key] += p;
      return;
    }
    const auto r1 = policies.q1.row(i, x1, z1);
    const auto r2 = policies.q2.row(i, x2, z2);
    for (int u = 0; u < a1; ++u) {
      for (int v = 0; v < a2; ++v) {
        for (int w = 0; w < ay; ++w) {
          for (std::size_t t = 0; t < ns; ++t) {
            const double q = r1[u] * r2[v] * channel.prob(u, v, s, w, t);
            if (q == 0.0) continue;
            x1.push_back(u);
            x2.push_back(v);
            y.push_back(w);
            z1.push_back(policies.f1(w));
            z2.push_back(policies.f2(w));
            go(i + 1, t, p * q);
            x1.pop_back();
            x2.pop_back();
            y.pop_back();
            z1.pop_back();
            z2.pop_back();
          }
        }
      }
    }
  };
  for (std::size_t s = 0; s < ns; ++s) go(0, s, s0_weights[s]);
  std::vector<Outcome> out;
  for (const auto& [k, p] : acc) {
    Outcome o;
    o.x1.assign(k.begin(), k.begin() + n);
    o.x2.assign(k.begin() + n, k.begin() + 2 * n);
    o.y.assign(k.begin() + 2 * n, k.end());
    o.p = p;
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<Outcome> outcomes_of(const dimac::JointLaw& joint) {
  const auto& s = joint.shape();
  const std::size_t n = s.n();
  std::vector<Outcome> out;
  for (std::size_t c1 = 0; c1 < s.nx1(); ++c1) {
    for (std::size_t c2 = 0; c2 < s.nx2(); ++c2) {
      for (std::size_t cy = 0; cy < s.ny(); ++cy) {
        const double p = joint(c1, c2, cy);
        if (p == 0.0) continue;
        out.push_back({digits(c1, s.x1().size(), n), digits(c2, s.x2().size(), n),
                       digits(cy, s.y().size(), n), p});
      }
    }
  }
  return out;
}

double marginal_entropy(const std::vector<Outcome>& d,
                        const std::function<Key(const Outcome&)>& key) {
  std::map<Key, double> m;
  for (const auto& o : d) m[key(o)] += o.p;
  double h = 0.0;
  for (const auto& [k, p] : m) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h / std::log(2.0);
}

Key prefix_key(const Outcome& o, std::size_t a, std::size_t b, std::size_t c) {
  Key k;
  k.insert(k.end(), o.x1.begin(), o.x1.begin() + static_cast<long>(a));
  k.push_back(-1);
  k.insert(k.end(), o.x2.begin(), o.x2.begin() + static_cast<long>(b));
  k.push_back(-1);
  k.insert(k.end(), o.y.begin(), o.y.begin() + static_cast<long>(c));
  return k;
}

namespace {

double cmi(const std::vector<Outcome>& d, std::size_t a1, std::size_t a2, std::size_t c1,
           std::size_t c2, std::size_t yb, std::size_t ya) {
  // I(A; Y_i | C, Y^{i-1}) where (a1, a2) and (c1, c2) are prefix lengths of
  // the source block together with the conditioning block.
  auto h = [&](std::size_t u, std::size_t v, std::size_t w) {
    return marginal_entropy(d, [=](const Outcome& o) { return prefix_key(o, u, v, w); });
  };
  return h(a1, a2, yb) + h(c1, c2, ya) - h(a1, a2, ya) - h(c1, c2, yb);
}

}  // namespace

double directed_info(const std::vector<Outcome>& d, bool use1, bool use2) {
  const std::size_t n = d.front().y.size();
  double total = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    total += cmi(d, use1 ? i : 0, use2 ? i : 0, 0, 0, i - 1, i);
  }
  return total;
}

double directed_info_cc(const std::vector<Outcome>& d, bool first) {
  const std::size_t n = d.front().y.size();
  double total = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    total += cmi(d, i, i, first ? 0 : i, first ? i : 0, i - 1, i);
  }
  return total;
}

double gallager_sum(int type, double rho, const dimac::FsMac& channel,
                    const dimac::InputPolicies& policies, const std::vector<double>& s0_weights,
                    std::size_t n) {
  const std::size_t a1 = channel.in1().size();
  const std::size_t a2 = channel.in2().size();
  const std::size_t ay = channel.out().size();
  auto count = [n](std::size_t a) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < n; ++i) c *= a;
    return c;
  };
  auto q = [&](const dimac::CausalKernel& k, const dimac::FeedbackFn& f,
               const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> z;
    for (int v : y) z.push_back(f(v));
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) p *= k.row(i, x, z)[static_cast<std::size_t>(x[i])];
    return p;
  };
  const double e = 1.0 / (1.0 + rho);
  double total = 0.0;
  for (std::size_t cy = 0; cy < count(ay); ++cy) {
    const auto y = digits(cy, ay, n);
    if (type == 3) {
      double inner = 0.0;
      for (std::size_t c1 = 0; c1 < count(a1); ++c1) {
        for (std::size_t c2 = 0; c2 < count(a2); ++c2) {
          const auto x1 = digits(c1, a1, n);
          const auto x2 = digits(c2, a2, n);
          inner += q(policies.q1, policies.f1, x1, y) * q(policies.q2, policies.f2, x2, y) *
                   std::pow(path_sum_law(channel, s0_weights, x1, x2, y), e);
        }
      }
      total += std::pow(inner, 1.0 + rho);
      continue;
    }
    const bool one = type == 1;
    const std::size_t outer_count = count(one ? a2 : a1);
    const std::size_t inner_count = count(one ? a1 : a2);
    for (std::size_t co = 0; co < outer_count; ++co) {
      const auto xo = digits(co, one ? a2 : a1, n);
      double inner = 0.0;
      for (std::size_t ci = 0; ci < inner_count; ++ci) {
        const auto xi = digits(ci, one ? a1 : a2, n);
        const auto& x1 = one ? xi : xo;
        const auto& x2 = one ? xo : xi;
        const double qi = one ? q(policies.q1, policies.f1, x1, y) : q(policies.q2, policies.f2, x2, y);
        inner += qi * std::pow(path_sum_law(channel, s0_weights, x1, x2, y), e);
      }
      const double qo = one ? q(policies.q2, policies.f2, xo, y) : q(policies.q1, policies.f1, xo, y);
      total += qo * std::pow(inner, 1.0 + rho);
    }
  }
  return total;
}

std::vector<dimac::geom::Point> gift_wrap(std::vector<dimac::geom::Point> pts) {
  using dimac::geom::Point;
  std::sort(pts.begin(), pts.end(),
            [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  auto cr = [](Point o, Point a, Point b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  auto d2 = [](Point a, Point b) { return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y); };
  std::vector<Point> hull;
  std::size_t cur = 0;
  do {
    hull.push_back(pts[cur]);
    std::size_t next = (cur + 1) % pts.size();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double c = cr(pts[cur], pts[next], pts[k]);
      // Clockwise candidate found, or a farther collinear one.
      if (c < 0.0 || (c == 0.0 && d2(pts[cur], pts[k]) > d2(pts[cur], pts[next]))) next = k;
    }
    cur = next;
  } while (cur != 0 && hull.size() <= pts.size());
  return hull;
}

namespace {

using dimac::geom::Point;

std::vector<Point> sample_boundary(const std::vector<Point>& v, std::size_t samples) {
  if (v.size() == 1) return v;
  std::vector<Point> out;
  double perim = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    perim += std::hypot(b.x - a.x, b.y - a.y);
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const auto k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(len / perim * static_cast<double>(samples))));
    for (std::size_t j = 0; j < k; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(k);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

bool inside(const std::vector<Point>& v, Point p) {
  if (v.size() < 3) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < 0.0) return false;
  }
  return true;
}

double segment(Point p, Point a, Point b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::max(0.0, std::min(1.0, t));
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

double directed(const std::vector<Point>& a, const std::vector<Point>& b, std::size_t samples) {
  double worst = 0.0;
  for (const Point& p : sample_boundary(a, samples)) {
    if (inside(b, p)) continue;
    double best = std::numeric_limits<double>::infinity();
    if (b.size() == 1) best = std::hypot(p.x - b[0].x, p.y - b[0].y);
    for (std::size_t i = 0; b.size() > 1 && i < b.size(); ++i) {
      best = std::min(best, segment(p, b[i], b[(i + 1) % b.size()]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double sampled_hausdorff(const std::vector<Point>& a, const std::vector<Point>& b,
                         std::size_t samples) {
  return std::max(directed(a, b, samples), directed(b, a, samples));
}

double shoelace(const std::vector<Point>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

}  // namespace oracle
