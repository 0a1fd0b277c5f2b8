#include "glvsim/channel.hpp"

#include "glvsim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace glvsim {

std::string to_string(ChannelMethod m) {
  switch (m) {
  case ChannelMethod::Direct:
    return "direct";
  case ChannelMethod::Truncated:
    return "truncated";
  case ChannelMethod::Hierarchical:
    return "hierarchical";
  }
  return "?";
}

std::string to_string(EmissionQuadrature q) {
  return q == EmissionQuadrature::Impulse ? "impulse" : "segment";
}

ChannelMethod parse_channel_method(const std::string &name) {
  if (name == "direct")
    return ChannelMethod::Direct;
  if (name == "truncated")
    return ChannelMethod::Truncated;
  if (name == "hierarchical")
    return ChannelMethod::Hierarchical;
  throw ConfigError("unknown channel method '" + name +
                    "' (expected direct, truncated or hierarchical)");
}

EmissionQuadrature parse_emission_quadrature(const std::string &name) {
  if (name == "impulse")
    return EmissionQuadrature::Impulse;
  if (name == "segment")
    return EmissionQuadrature::Segment;
  throw ConfigError("unknown emission quadrature '" + name +
                    "' (expected impulse or segment)");
}

std::size_t ChannelConfig::num_samples() const {
  return static_cast<std::size_t>(std::llround(horizon_s * sample_rate_hz));
}

void ChannelConfig::validate() const {
  for (Molecule m : kAllMolecules)
    if (!(diffusivity[m] > 0.0) || !std::isfinite(diffusivity[m]))
      throw ConfigError("channel: diffusivity for " +
                        std::string(molecule_name(m)) + " must be > 0");
  if (!(horizon_s > 0.0))
    throw ConfigError("channel: horizon_s must be > 0");
  if (!(sample_rate_hz > 0.0))
    throw ConfigError("channel: sample_rate_hz must be > 0");
  if (num_samples() < 1)
    throw ConfigError("channel: horizon shorter than one sample");
  if (!(quadrature_resolution > 0.0) || !(aggregation_tolerance > 0.0))
    throw ConfigError("channel: resolution and tolerance must be > 0");
  if (!(truncation_ratio >= 0.0) || !(coarse_ratio >= 0.0))
    throw ConfigError("channel: truncation_ratio and coarse_ratio must be >= 0");
  if (max_subdivisions < 1)
    throw ConfigError("channel: max_subdivisions must be >= 1");
}

double impulse_response(double delta_t, const Vec3 &offset,
                        double diffusivity) {
  if (!(delta_t > 0.0))
    throw std::domain_error("impulse_response: delta_t must be > 0");
  if (!(diffusivity > 0.0))
    throw std::domain_error("impulse_response: diffusivity must be > 0");
  const double four_d_t = 4.0 * diffusivity * delta_t;
  return std::pow(std::numbers::pi * four_d_t, -1.5) *
         std::exp(-offset.norm2() / four_d_t);
}

namespace {

constexpr double kUnderflowExponent = 745.0;
const double kInvTwoPi15 = std::pow(2.0 * std::numbers::pi, -1.5);

// A mass released around time `tau` with horizontal centroid `(mx, my)`
// (relative to the cumulative wind displacement) and horizontal covariance
// (cxx, cxy, cyy).
struct Release {
  double mass = 0.0;
  double tau = 0.0;
  double mx = 0.0;
  double my = 0.0;
  double cxx = 0.0;
  double cxy = 0.0;
  double cyy = 0.0;
};

// Concentration at offset (px + mx, py + my, pz) from a release observed
// `lag` seconds later: a Gaussian with covariance 2 D lag I + C.
inline double gaussian(const Release &r, double lag, double px, double py,
                       double pz, double diffusivity) {
  const double a = 2.0 * diffusivity * lag;
  const double rx = px + r.mx;
  const double ry = py + r.my;
  const double sxx = a + r.cxx;
  const double syy = a + r.cyy;
  const double det2 = sxx * syy - r.cxy * r.cxy;
  const double quad =
      (syy * rx * rx - 2.0 * r.cxy * rx * ry + sxx * ry * ry) / det2 +
      pz * pz / a;
  return r.mass * kInvTwoPi15 * std::exp(-0.5 * quad) / std::sqrt(det2 * a);
}

// Largest point-kernel value (4 pi u)^-1.5 exp(-dist2 / (4 u)) over
// u = D * L in [u_lo, u_hi].
inline double kernel_sup(double dist2, double u_lo, double u_hi) {
  const double u = std::clamp(dist2 / 6.0, u_lo, u_hi);
  if (u <= 0.0)
    return std::numeric_limits<double>::infinity();
  const double expo = dist2 / (4.0 * u);
  if (expo > kUnderflowExponent)
    return 0.0;
  const double v = 4.0 * std::numbers::pi * u;
  return std::exp(-expo) / (v * std::sqrt(v));
}

// erf(b) - erf(a) for a <= b without cancellation in the tails.
inline double erf_difference(double a, double b) {
  if (a >= 0.0)
    return std::erfc(a) - std::erfc(b);
  if (b <= 0.0)
    return std::erfc(-b) - std::erfc(-a);
  return std::erf(b) - std::erf(a);
}

// A straight release path r0 + v s, s in [0, duration], with the geometry
// that does not depend on the diffusivity precomputed.
struct SegmentGeometry {
  double speed = 0.0;
  double along = 0.0;  // r0 projected on the direction of v
  double perp2 = 0.0;  // squared distance from the receiver to the line
  double mid2 = 0.0;   // squared offset of the midpoint
  double duration = 0.0;

  SegmentGeometry(double r0x, double r0y, double pz, double vx, double vy,
                  double dur)
      : speed(std::hypot(vx, vy)), duration(dur) {
    const double mx = r0x + 0.5 * vx * dur;
    const double my = r0y + 0.5 * vy * dur;
    mid2 = mx * mx + my * my + pz * pz;
    if (speed > 0.0) {
      const double ex = vx / speed;
      const double ey = vy / speed;
      along = r0x * ex + r0y * ey;
      const double qx = r0x - along * ex;
      const double qy = r0y - along * ey;
      perp2 = qx * qx + qy * qy + pz * pz;
    }
  }

  // Concentration from `mass` spread uniformly along the path, observed
  // after `lag` (the same for the whole piece). The Gaussian kernel is
  // integrated exactly along the line.
  double concentration(double mass, double lag, double diffusivity) const {
    const double four_dl = 4.0 * diffusivity * lag;
    const double v = std::numbers::pi * four_dl;
    const double norm = 1.0 / (v * std::sqrt(v));
    const double width = std::sqrt(four_dl);
    if (speed * duration < 1e-3 * width)
      return mass * norm * std::exp(-mid2 / four_dl);
    const double diff =
        erf_difference(along / width, (along + speed * duration) / width);
    return mass / duration * norm * std::exp(-perp2 / four_dl) * width /
           speed * (0.5 * std::sqrt(std::numbers::pi)) * diff;
  }
};

struct Node {
  std::size_t lo = 0, hi = 0;
  std::int64_t left = -1, right = -1;
  std::size_t first = 0, last = 0; // first/last leaf with weight
  Release moments;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

// Molecules whose emission samples are proportional share one tree.
struct Group {
  std::vector<double> weights; // reference pattern
  std::vector<Molecule> molecules;
  std::vector<double> scale; // samples[m] = scale * weights
  std::vector<Node> nodes;
  double d_min = 0.0;
  double d_max = 0.0;
};

bool proportional(const std::vector<double> &a, const std::vector<double> &b,
                  double &scale) {
  // Find the ratio from the first non-zero reference sample.
  std::size_t i = 0;
  while (i < a.size() && a[i] == 0.0)
    ++i;
  if (i == a.size())
    return false;
  scale = b[i] / a[i];
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double expect = scale * a[k];
    if (std::abs(b[k] - expect) > 1e-14 * std::max(std::abs(b[k]), 1e-300))
      return false;
  }
  return true;
}

class Evaluator {
public:
  Evaluator(const EmissionSignal &signal, const WindPath &wind,
            const ChannelConfig &cfg)
      : wind_(wind), cfg_(cfg), n_(cfg.num_samples()), dt_(cfg.dt()) {
    const EmissionSignal padded = signal.resized(n_);
    for (Molecule m : kAllMolecules) {
      const auto &q = padded.samples[m];
      if (std::all_of(q.begin(), q.end(), [](double v) { return v == 0.0; }))
        continue;
      bool placed = false;
      for (auto &g : groups_) {
        double s = 0.0;
        if (proportional(g.weights, q, s)) {
          g.molecules.push_back(m);
          g.scale.push_back(s);
          placed = true;
          break;
        }
      }
      if (!placed) {
        Group g;
        g.weights = q;
        g.molecules.push_back(m);
        g.scale.push_back(1.0);
        groups_.push_back(std::move(g));
      }
    }
    for (auto &g : groups_) {
      g.d_min = std::numeric_limits<double>::infinity();
      for (Molecule m : g.molecules) {
        g.d_min = std::min(g.d_min, cfg_.diffusivity[m]);
        g.d_max = std::max(g.d_max, cfg_.diffusivity[m]);
      }
      if (cfg_.method != ChannelMethod::Direct) {
        g.nodes.reserve(2 * n_);
        build(g, 0, n_);
      }
    }
  }

  ConcentrationTrace run(const Vec3 &rx) const {
    const Vec3 d = rx - cfg_.tx_position;
    if (d.norm() < kMinSeparation)
      throw GeometryError("receiver at " + to_string(rx) +
                          " is within 1 mm of the transmitter");
    ConcentrationTrace trace;
    trace.position = rx;
    trace.sample_rate_hz = cfg_.sample_rate_hz;
    for (auto &v : trace.values)
      v.assign(n_, 0.0);

    for (const auto &g : groups_) {
      std::vector<double> running_max(g.molecules.size(), 0.0);
      std::vector<double> sums(g.molecules.size());
      std::vector<double> bounds(g.molecules.size());
      for (std::size_t n = 1; n < n_; ++n) {
        std::fill(sums.begin(), sums.end(), 0.0);
        const Vec3 p = d - wind_.displacement[n];
        if (cfg_.method == ChannelMethod::Direct) {
          for (std::size_t k = 0; k < n; ++k)
            if (g.weights[k] != 0.0)
              add_leaf(g, k, n, p, sums);
        } else {
          visit(g, 0, n, p, running_max, bounds, sums);
        }
        for (std::size_t i = 0; i < g.molecules.size(); ++i) {
          const double c = sums[i];
          if (!(c >= 0.0) || !std::isfinite(c))
            throw NumericError("channel produced invalid concentration " +
                               std::to_string(c) + " at sample " +
                               std::to_string(n));
          trace.values[g.molecules[i]][n] = c;
          running_max[i] = std::max(running_max[i], c);
        }
      }
    }
    return trace;
  }

private:
  Release leaf_release(const std::vector<double> &w, std::size_t k) const {
    Release r;
    r.mass = w[k] * dt_;
    const Vec3 &w0 = wind_.displacement[k];
    if (cfg_.quadrature == EmissionQuadrature::Impulse) {
      r.tau = static_cast<double>(k) * dt_;
      r.mx = w0.x;
      r.my = w0.y;
      return r;
    }
    const Vec3 &v = wind_.velocities[k];
    r.tau = (static_cast<double>(k) + 0.5) * dt_;
    r.mx = w0.x + 0.5 * v.x * dt_;
    r.my = w0.y + 0.5 * v.y * dt_;
    const double f = dt_ * dt_ / 12.0;
    r.cxx = v.x * v.x * f;
    r.cxy = v.x * v.y * f;
    r.cyy = v.y * v.y * f;
    return r;
  }

  static void merge(Release &into, const Release &other) {
    if (other.mass == 0.0)
      return;
    if (into.mass == 0.0) {
      into = other;
      return;
    }
    const double m = into.mass + other.mass;
    const double wa = into.mass / m;
    const double wb = other.mass / m;
    const double dx = other.mx - into.mx;
    const double dy = other.my - into.my;
    const double cross = wa * wb;
    into.cxx = wa * into.cxx + wb * other.cxx + cross * dx * dx;
    into.cxy = wa * into.cxy + wb * other.cxy + cross * dx * dy;
    into.cyy = wa * into.cyy + wb * other.cyy + cross * dy * dy;
    into.mx += wb * dx;
    into.my += wb * dy;
    into.tau = wa * into.tau + wb * other.tau;
    into.mass = m;
  }

  std::int64_t build(Group &g, std::size_t lo, std::size_t hi) {
    const auto id = static_cast<std::int64_t>(g.nodes.size());
    g.nodes.emplace_back();
    Node node;
    node.lo = lo;
    node.hi = hi;
    if (hi - lo == 1) {
      node.moments = leaf_release(g.weights, lo);
      node.first = node.last = lo;
      const Vec3 &a = wind_.displacement[lo];
      Vec3 b = a;
      if (cfg_.quadrature == EmissionQuadrature::Segment)
        b = a + wind_.velocities[lo] * dt_;
      node.xmin = std::min(a.x, b.x);
      node.xmax = std::max(a.x, b.x);
      node.ymin = std::min(a.y, b.y);
      node.ymax = std::max(a.y, b.y);
    } else {
      const std::size_t mid = lo + (hi - lo) / 2;
      node.left = build(g, lo, mid);
      node.right = build(g, mid, hi);
      const Node &l = g.nodes[static_cast<std::size_t>(node.left)];
      const Node &r = g.nodes[static_cast<std::size_t>(node.right)];
      node.moments = l.moments;
      merge(node.moments, r.moments);
      const bool lm = l.moments.mass != 0.0;
      const bool rm = r.moments.mass != 0.0;
      if (lm && rm) {
        node.first = l.first;
        node.last = r.last;
        node.xmin = std::min(l.xmin, r.xmin);
        node.xmax = std::max(l.xmax, r.xmax);
        node.ymin = std::min(l.ymin, r.ymin);
        node.ymax = std::max(l.ymax, r.ymax);
      } else {
        const Node &src = lm ? l : r;
        node.first = src.first;
        node.last = src.last;
        node.xmin = src.xmin;
        node.xmax = src.xmax;
        node.ymin = src.ymin;
        node.ymax = src.ymax;
      }
    }
    g.nodes[static_cast<std::size_t>(id)] = node;
    return id;
  }

  // Time from the end of the emission interval of sample k to t_n.
  double lag_after(std::size_t k, std::size_t n) const {
    const double end =
        cfg_.quadrature == EmissionQuadrature::Segment ? k + 1.0 : double(k);
    return (static_cast<double>(n) - end) * dt_;
  }

  // Sub-intervals so that each one's duration is at most
  // quadrature_resolution times its lag.
  std::size_t subdivisions(std::size_t k, std::size_t n) const {
    if (cfg_.quadrature == EmissionQuadrature::Impulse)
      return 1;
    const double lag_end = lag_after(k, n);
    if (lag_end <= 0.0)
      return cfg_.max_subdivisions;
    const double need = dt_ / (cfg_.quadrature_resolution * lag_end);
    if (need <= 1.0)
      return 1;
    return std::min<std::size_t>(cfg_.max_subdivisions,
                                 static_cast<std::size_t>(std::ceil(need)));
  }

  void add_leaf(const Group &g, std::size_t k, std::size_t n, const Vec3 &p,
                std::vector<double> &sums) const {
    const double tn = static_cast<double>(n) * dt_;
    if (cfg_.quadrature == EmissionQuadrature::Impulse) {
      Release r = leaf_release(g.weights, k);
      const double mass = r.mass;
      for (std::size_t i = 0; i < g.molecules.size(); ++i) {
        r.mass = mass * g.scale[i];
        sums[i] += gaussian(r, tn - r.tau, p.x, p.y, p.z,
                            cfg_.diffusivity[g.molecules[i]]);
      }
      return;
    }
    const std::size_t s_count = subdivisions(k, n);
    const Vec3 &w0 = wind_.displacement[k];
    const Vec3 &v = wind_.velocities[k];
    const double sub = dt_ / static_cast<double>(s_count);
    for (std::size_t s = 0; s < s_count; ++s) {
      const double start = static_cast<double>(s) * sub;
      const double lag = tn - (static_cast<double>(k) * dt_ + start + 0.5 * sub);
      const SegmentGeometry geom(p.x + w0.x + v.x * start,
                                 p.y + w0.y + v.y * start, p.z, v.x, v.y, sub);
      for (std::size_t i = 0; i < g.molecules.size(); ++i)
        sums[i] += geom.concentration(g.weights[k] * g.scale[i] * sub, lag,
                                      cfg_.diffusivity[g.molecules[i]]);
    }
  }

  // Upper bound of the node's contribution per molecule, from its bounding
  // box and lag range. Returns the largest bound/running-max ratio.
  double bound_ratio(const Group &g, const Node &node, std::size_t n,
                     const Vec3 &p, const std::vector<double> &running_max,
                     std::vector<double> &bounds) const {
    const double lag_lo = std::max(lag_after(node.last, n), 0.0);
    const double lag_hi = static_cast<double>(n - node.first) * dt_;
    const double tx = -p.x;
    const double ty = -p.y;
    const double dx = tx < node.xmin ? node.xmin - tx
                      : tx > node.xmax ? tx - node.xmax
                                       : 0.0;
    const double dy = ty < node.ymin ? node.ymin - ty
                      : ty > node.ymax ? ty - node.ymax
                                       : 0.0;
    const double dist2 = dx * dx + dy * dy + p.z * p.z;
    const double sup =
        node.moments.mass * kernel_sup(dist2, g.d_min * lag_lo, g.d_max * lag_hi);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.molecules.size(); ++i) {
      bounds[i] = sup * g.scale[i];
      if (bounds[i] > 0.0)
        worst = std::max(worst, running_max[i] > 0.0
                                    ? bounds[i] / running_max[i]
                                    : std::numeric_limits<double>::infinity());
    }
    return worst;
  }

  void add_moments(const Group &g, const Node &node, std::size_t n,
                   const Vec3 &p, const std::vector<double> *cap,
                   std::vector<double> &sums) const {
    const double tn = static_cast<double>(n) * dt_;
    for (std::size_t i = 0; i < g.molecules.size(); ++i) {
      Release r = node.moments;
      r.mass *= g.scale[i];
      double c = gaussian(r, tn - r.tau, p.x, p.y, p.z,
                          cfg_.diffusivity[g.molecules[i]]);
      if (cap)
        c = std::min(c, (*cap)[i]);
      sums[i] += c;
    }
  }

  bool mergeable(const Group &g, const Node &node, std::size_t n) const {
    const double lag_lo = lag_after(node.last, n);
    if (lag_lo <= 0.0)
      return false;
    const double eta = cfg_.aggregation_tolerance;
    const double span = static_cast<double>(node.last - node.first + 1) * dt_;
    if (span > eta * lag_lo)
      return false;
    const Release &m = node.moments;
    const double half_tr = 0.5 * (m.cxx + m.cyy);
    const double disc = std::sqrt(0.25 * (m.cxx - m.cyy) * (m.cxx - m.cyy) +
                                  m.cxy * m.cxy);
    const double lambda_max = half_tr + disc;
    return lambda_max <= eta * eta * 2.0 * g.d_min * lag_lo;
  }

  void visit(const Group &g, std::size_t id, std::size_t n, const Vec3 &p,
             const std::vector<double> &running_max, std::vector<double> &bounds,
             std::vector<double> &sums) const {
    const Node &node = g.nodes[id];
    if (node.lo >= n || node.moments.mass == 0.0)
      return;
    if (node.last < n) {
      const double ratio = bound_ratio(g, node, n, p, running_max, bounds);
      if (ratio < cfg_.truncation_ratio)
        return;
      if (cfg_.method == ChannelMethod::Hierarchical) {
        if (ratio < cfg_.coarse_ratio) {
          add_moments(g, node, n, p, &bounds, sums);
          return;
        }
        if (node.left >= 0 && mergeable(g, node, n)) {
          add_moments(g, node, n, p, nullptr, sums);
          return;
        }
      }
      if (node.left < 0) {
        add_leaf(g, node.lo, n, p, sums);
        return;
      }
    }
    visit(g, static_cast<std::size_t>(node.left), n, p, running_max, bounds,
          sums);
    visit(g, static_cast<std::size_t>(node.right), n, p, running_max, bounds,
          sums);
  }

  const WindPath &wind_;
  const ChannelConfig &cfg_;
  std::size_t n_;
  double dt_;
  std::vector<Group> groups_;
};

void check_inputs(const EmissionSignal &signal, const WindPath &wind,
                  const ChannelConfig &cfg) {
  cfg.validate();
  const double tol = 1e-9 * cfg.sample_rate_hz;
  if (std::abs(signal.sample_rate_hz - cfg.sample_rate_hz) > tol ||
      std::abs(wind.sample_rate_hz - cfg.sample_rate_hz) > tol)
    throw ConfigError("channel: emission, wind and channel sample rates "
                      "differ");
  if (wind.size() < cfg.num_samples())
    throw ConfigError("channel: wind path shorter than the horizon");
}

} // namespace

std::vector<ConcentrationTrace> propagate(const EmissionSignal &signal,
                                          const WindPath &wind,
                                          const ChannelConfig &cfg,
                                          std::span<const Vec3> rx_positions,
                                          unsigned workers) {
  check_inputs(signal, wind, cfg);
  for (const Vec3 &rx : rx_positions)
    if ((rx - cfg.tx_position).norm() < kMinSeparation)
      throw GeometryError("receiver at " + to_string(rx) +
                          " is within 1 mm of the transmitter");
  const Evaluator evaluator(signal, wind, cfg);
  std::vector<ConcentrationTrace> out(rx_positions.size());
  parallel_for(rx_positions.size(), workers, [&](std::size_t i) {
    out[i] = evaluator.run(rx_positions[i]);
  });
  return out;
}

ParticleEstimate particle_oracle(const EmissionSignal &signal, Molecule molecule,
                                 const WindPath &wind, const ChannelConfig &cfg,
                                 const Vec3 &rx_position,
                                 std::span<const std::size_t> sample_indices,
                                 const ParticleOracleOptions &options) {
  check_inputs(signal, wind, cfg);
  if (!(options.kernel_radius > 0.0))
    throw ConfigError("particle oracle: kernel_radius must be > 0");
  if (options.n_particles == 0)
    throw ConfigError("particle oracle: n_particles must be > 0");
  std::vector<std::size_t> probes(sample_indices.begin(), sample_indices.end());
  if (!std::is_sorted(probes.begin(), probes.end()))
    throw ConfigError("particle oracle: sample indices must be ascending");
  const std::size_t n = cfg.num_samples();
  if (!probes.empty() && probes.back() >= n)
    throw ConfigError("particle oracle: sample index beyond horizon");

  const double dt = cfg.dt();
  const double d = cfg.diffusivity[molecule];
  const std::vector<double> q = signal.resized(n).samples[molecule];
  double total_mass = 0.0;
  for (double v : q)
    total_mass += v * dt;

  ParticleEstimate est;
  est.sample_indices = probes;
  est.mean.assign(probes.size(), 0.0);
  est.standard_error.assign(probes.size(), 0.0);
  if (total_mass == 0.0 || probes.empty())
    return est;

  // Largest-remainder allocation of particles to emission samples.
  const auto np = static_cast<double>(options.n_particles);
  std::vector<std::size_t> count(n, 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double expect = np * q[k] * dt / total_mass;
    count[k] = static_cast<std::size_t>(std::floor(expect));
    assigned += count[k];
    if (q[k] > 0.0)
      remainders.emplace_back(expect - std::floor(expect), k);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < options.n_particles; ++i, ++assigned)
    ++count[remainders[i % remainders.size()].second];

  const double particle_mass = total_mass / np;
  const double radius2 = options.kernel_radius * options.kernel_radius;
  const double volume =
      4.0 / 3.0 * std::numbers::pi * std::pow(options.kernel_radius, 3);
  std::vector<std::size_t> hits(probes.size(), 0);

  std::mt19937_64 engine(options.seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const bool segment = cfg.quadrature == EmissionQuadrature::Segment;

  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < count[k]; ++j) {
      // Position at the first grid time after release.
      Vec3 x = cfg.tx_position;
      std::size_t grid = k;
      if (segment) {
        const double remaining = (1.0 - uniform(engine)) * dt;
        const double s = std::sqrt(2.0 * d * remaining);
        x += wind.velocities[k] * remaining +
             Vec3{s * unit(engine), s * unit(engine), s * unit(engine)};
        grid = k + 1;
      }
      for (std::size_t p = 0; p < probes.size(); ++p) {
        const std::size_t target = probes[p];
        if (target <= k)
          continue;
        if (target > grid) {
          const double s =
              std::sqrt(2.0 * d * static_cast<double>(target - grid) * dt);
          x += (wind.displacement[target] - wind.displacement[grid]) +
               Vec3{s * unit(engine), s * unit(engine), s * unit(engine)};
          grid = target;
        }
        if ((x - rx_position).norm2() < radius2)
          ++hits[p];
      }
    }
  }

  for (std::size_t p = 0; p < probes.size(); ++p) {
    const double h = static_cast<double>(hits[p]);
    const double scale = particle_mass / volume;
    est.mean[p] = h * scale;
    // Binomial standard error, with a one-count floor for empty spheres.
    est.standard_error[p] = std::sqrt(std::max(h, 1.0) * (1.0 - h / np)) * scale;
  }
  return est;
}

} // namespace glvsim
