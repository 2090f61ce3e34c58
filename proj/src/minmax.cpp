#include "viscmm/minmax.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace viscmm {

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  const int workers = std::min(threads, n);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

double slice_distance(const ManifoldModel& M, const Slice& a, const Slice& b) {
  if (a.degenerate && b.degenerate) {
    return M.geodesic_distance(a.point, b.point);
  }
  const DiscreteClosedCurve& c = a.degenerate ? *b.curve : *a.curve;
  if (a.degenerate || b.degenerate) {
    const Vec& p = a.degenerate ? a.point : b.point;
    double d = 0.0;
    for (int i = 0; i < c.size(); ++i) {
      d = std::max(d, M.geodesic_distance(p, c.node(i)));
    }
    return d;
  }
  if (a.curve->size() != b.curve->size()) {
    throw std::invalid_argument("slice_distance: node counts differ");
  }
  double d = 0.0;
  for (int i = 0; i < a.curve->size(); ++i) {
    d = std::max(d, M.geodesic_distance(a.curve->node(i), b.curve->node(i)));
  }
  return d;
}

Sweepout canonical_sweepout(const ManifoldModel& M, int S, int N) {
  if (M.kind() != ManifoldModel::Kind::kSphere || M.intrinsic_dim() != 2) {
    throw std::invalid_argument("canonical_sweepout: needs the 2-sphere");
  }
  if (S < 3) {
    throw std::invalid_argument("canonical_sweepout: need at least 3 slices");
  }
  Sweepout sw;
  sw.manifold = M;
  for (int j = 0; j < S; ++j) {
    const double t = double(j) / (S - 1);
    sw.params.push_back(t);
    const double h = 1.0 - 2.0 * t;
    Slice s;
    if (j == 0 || j == S - 1) {
      s.degenerate = true;
      s.point = Vec(3);
      s.point << 0.0, 0.0, (j == 0 ? 1.0 : -1.0);
    } else {
      const double r = std::sqrt(std::max(0.0, 1.0 - h * h));
      std::vector<Vec> nodes;
      nodes.reserve(N);
      for (int i = 0; i < N; ++i) {
        const double th = 2.0 * M_PI * i / N;
        Vec x(3);
        x << r * std::cos(th), r * std::sin(th), h;
        nodes.push_back(x);
      }
      s.curve = DiscreteClosedCurve(M, std::move(nodes));
    }
    sw.slices.push_back(std::move(s));
  }
  double gap = 0.0;
  for (int j = 0; j + 1 < S; ++j) {
    gap = std::max(gap, slice_distance(M, sw.slices[j], sw.slices[j + 1]));
  }
  sw.continuity_bound = std::max(0.2, 1.25 * gap);
  return sw;
}

WidthResult width(const Sweepout& sw, const EnergyParams& e,
                  const FlowOptions& o, int threads) {
  o.validate();
  const ManifoldModel& M = sw.manifold;
  const int S = sw.size();
  WidthResult out;
  out.relaxed = sw;

  double floor = o.length_floor;
  if (floor <= 0.0) {
    double emax = 0.0;
    for (const auto& s : sw.slices) {
      if (!s.degenerate) emax = std::max(emax, length(*s.curve));
    }
    floor = 0.5 * emax;
  }
  const double scale = o.cutoff_scale > 0.0 ? o.cutoff_scale : 0.5 * floor;
  const double bound = sw.continuity_bound;
  const double cap = std::min(o.displacement_cap, 0.25 * bound);

  FlowOptions slice_opts = o;
  slice_opts.displacement_cap = cap;
  slice_opts.length_floor = floor;

  std::vector<double> step_init(S, o.step0);
  std::vector<char> active(S, 1);
  for (int j = 0; j < S; ++j) active[j] = !sw.slices[j].degenerate;

  std::vector<std::optional<Eigen::MatrixXd>> cand(S);
  for (int iter = 0; iter < o.max_iters; ++iter) {
    for (auto& c : cand) c.reset();
    parallel_for(S, threads, [&](int j) {
      if (!active[j]) return;
      const DiscreteClosedCurve& c = *out.relaxed.slices[j].curve;
      const double L = length(c);
      const double psi = cutoff_psi((L - floor) / scale);
      if (psi == 0.0) return;
      DescentStep st = descent_step(c, e, slice_opts, psi, step_init[j]);
      if (st.grad_norm < o.grad_tol || !st.accepted) return;
      step_init[j] = 2.0 * st.step_used;
      cand[j] = std::move(st.nodes);
    });

    // apply candidates against the pre-iteration neighbor positions; the
    // cap guarantees the bound survives simultaneous neighbor moves
    bool moved = false;
    std::vector<Slice> next = out.relaxed.slices;
    for (int j = 0; j < S; ++j) {
      if (!cand[j]) continue;
      Slice trial;
      trial.curve = DiscreteClosedCurve(M, *cand[j]);
      bool ok = true;
      // margin 2*cap: the neighbor may move cap this iteration, and the
      // accepting step itself may close another cap next iteration
      for (int nb : {j - 1, j + 1}) {
        if (nb < 0 || nb >= S) continue;
        if (slice_distance(M, trial, out.relaxed.slices[nb]) >
            bound - 2.0 * cap) {
          ok = false;
          break;
        }
      }
      if (ok) {
        next[j] = std::move(trial);
        moved = true;
      }
    }
    out.relaxed.slices = std::move(next);
    out.iterations = iter + 1;
    if (!moved) break;
  }

  for (int j = 0; j + 1 < S; ++j) {
    if (slice_distance(M, out.relaxed.slices[j], out.relaxed.slices[j + 1]) >
        bound * (1.0 + 1e-9)) {
      throw std::runtime_error("width: continuity bound violated between "
                               "slices " +
                               std::to_string(j) + " and " +
                               std::to_string(j + 1));
    }
  }

  out.slice_energies.assign(S, 0.0);
  out.slice_lengths.assign(S, 0.0);
  out.beta = 0.0;
  for (int j = 0; j < S; ++j) {
    const auto& s = out.relaxed.slices[j];
    if (s.degenerate) continue;
    out.slice_energies[j] = energy(*s.curve, e);
    out.slice_lengths[j] = length(*s.curve);
    if (out.slice_energies[j] > out.beta) {
      out.beta = out.slice_energies[j];
      out.argmax_slice = j;
    }
  }
  if (out.argmax_slice < 0) {
    throw std::invalid_argument("width: sweepout has no non-degenerate slice");
  }
  return out;
}

EntropyScheduleReport entropy_schedule(const Sweepout& sw,
                                       const std::vector<double>& sigmas,
                                       const FlowOptions& o, int threads) {
  if (sigmas.size() < 2) {
    throw std::invalid_argument("entropy_schedule: need at least 2 sigmas");
  }
  for (size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 0.0) || !(sigmas[i] < std::exp(-1.0))) {
      throw std::invalid_argument(
          "entropy_schedule: sigma must lie in (0, 1/e)");
    }
    if (i > 0 && !(sigmas[i] < sigmas[i - 1])) {
      throw std::invalid_argument(
          "entropy_schedule: sigmas must be strictly decreasing");
    }
  }

  EntropyScheduleReport rep;
  for (double s : sigmas) {
    const WidthResult w = width(sw, EnergyParams(s), o, threads);
    EntropyScheduleRow row;
    row.sigma = s;
    row.beta = w.beta;
    row.bound = 1.0 / (s * std::log(1.0 / s));
    row.bending_max = bending(*w.relaxed.slices[w.argmax_slice].curve,
                              EnergyParams(s));
    rep.rows.push_back(row);
  }
  const size_t n = rep.rows.size();
  for (size_t i = 0; i < n; ++i) {
    const size_t k = std::min(i, n - 2);  // last row reuses the final slope
    rep.rows[i].beta_prime = (rep.rows[k].beta - rep.rows[k + 1].beta) /
                             (rep.rows[k].sigma - rep.rows[k + 1].sigma);
    rep.rows[i].selected = rep.rows[i].beta_prime <= rep.rows[i].bound;
  }
  return rep;
}

QuasiConservation quasi_conservation(const DiscreteClosedCurve& c,
                                     const EnergyParams& e) {
  const int N = c.size();
  if (N < 16) {
    throw std::invalid_argument("quasi_conservation: need N >= 16");
  }
  const double s2 = e.sigma * e.sigma;
  const std::vector<Vec> ud = unit_tangent(c);
  const std::vector<Vec> A = discrete_covariant_derivative(c, ud);
  const std::vector<Vec> A2 = discrete_covariant_derivative(c, A);
  const std::vector<double> kap = geodesic_curvature(c);
  const std::vector<double> ds = arclength_weights(c);

  std::vector<Vec> v(N);
  for (int i = 0; i < N; ++i) {
    v[i] = ud[i] - s2 * (2.0 * A2[i] + 3.0 * kap[i] * kap[i] * ud[i]);
  }
  const std::vector<Vec> Dv = discrete_covariant_derivative(c, v);

  QuasiConservation out;
  double L = 0.0;
  Vec vbar = Vec::Zero(ud[0].size());
  for (int i = 0; i < N; ++i) {
    out.dtv_l2 += Dv[i].squaredNorm() * ds[i];
    vbar += v[i] * ds[i];
    L += ds[i];
  }
  out.dtv_l2 = std::sqrt(out.dtv_l2);
  vbar /= L;
  for (int i = 0; i < N; ++i) {
    out.osc_v = std::max(out.osc_v, (v[i] - vbar).norm());
    const double sc = ud[i].dot(v[i]);
    out.defect = std::max(
        out.defect, std::fabs(sc - (1.0 - s2 * kap[i] * kap[i])));
  }
  return out;
}

}  // namespace viscmm
