#include "ddvv/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>
#include <thread>

namespace ddvv {

namespace {

// Armijo line search.
constexpr double kInitialStep = 0.5;
constexpr double kBacktrack = 0.5;
constexpr double kSufficientIncrease = 1e-4;
constexpr int kMaxBacktracks = 40;
// Stall detection: relative improvement below kStallTol over kStallWindow steps.
constexpr std::size_t kStallWindow = 50;
constexpr double kStallTol = 1e-12;
constexpr double kMinRefineStep = 1e-10;

MatTuple combine(const MatTuple& x, double alpha, const MatTuple& g) {
  std::vector<MatTuple::Item> items;
  items.reserve(x.size());
  for (std::size_t r = 0; r < x.size(); ++r) {
    Matrix m = x.mat(r);
    axpy(alpha, g.mat(r), m);
    items.push_back({x.kind(r), std::move(m)});
  }
  return MatTuple(std::move(items));
}

MatTuple normalized(const MatTuple& x) {
  const double s = std::sqrt(x.norm_sq_sum());
  if (s == 0.0) return x;
  std::vector<MatTuple::Item> items;
  items.reserve(x.size());
  for (const auto& it : x) items.push_back({it.kind, it.mat / s});
  return MatTuple(std::move(items));
}

double tuple_norm(const MatTuple& t) { return std::sqrt(t.norm_sq_sum()); }

Matrix project_for(const Matrix& a, MatKind kind, bool traceless_flag) {
  Matrix out = project_kind(a, kind);
  if (traceless_flag && kind != MatKind::skew) out = traceless(out);
  return out;
}

MatTuple from_components(const MatTuple& shape, std::vector<Matrix> comps, bool traceless_flag) {
  std::vector<MatTuple::Item> items;
  items.reserve(shape.size());
  for (std::size_t r = 0; r < shape.size(); ++r) {
    items.push_back({shape.kind(r), project_for(comps[r], shape.kind(r), traceless_flag)});
  }
  return MatTuple(std::move(items));
}

// Gradient of |[a,b]|^2 with respect to a: 2 (C b^T - b^T C), C = [a,b].
Matrix bracket_norm_grad(const Matrix& a, const Matrix& b) {
  const Matrix c = commutator(a, b);
  const Matrix bt = b.transpose();
  return 2.0 * (c * bt - bt * c);
}

std::vector<Matrix> raw_pair_gradient(const MatTuple& t) {
  std::vector<Matrix> g(t.size(), Matrix(t.n(), t.n()));
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t s = 0; s < t.size(); ++s) {
      if (s != r) g[r] += bracket_norm_grad(t.mat(r), t.mat(s));
    }
  return g;
}

MatTuple sample_tuple(const SearchConfig& cfg, Rng& rng) {
  std::vector<MatTuple::Item> items;
  if (cfg.target == Target::bw) {
    for (int k = 0; k < 2; ++k) items.push_back({MatKind::general, random_matrix(cfg.n, MatKind::general, rng)});
  } else {
    for (std::size_t r = 0; r < cfg.m_sym; ++r) {
      items.push_back({MatKind::symmetric, random_matrix(cfg.n, MatKind::symmetric, rng)});
    }
    for (std::size_t r = 0; r < cfg.m_skew; ++r) {
      items.push_back({MatKind::skew, random_matrix(cfg.n, MatKind::skew, rng)});
    }
  }
  if (cfg.traceless) {
    for (auto& it : items) {
      if (it.kind != MatKind::skew) it.mat = traceless(it.mat);
    }
  }
  return normalized(MatTuple(std::move(items)));
}

// Restarts run independently; results land in index order.
template <class Fn>
std::vector<RestartRecord> run_restarts(const SearchConfig& cfg, std::size_t jobs, Fn&& fn) {
  std::vector<std::optional<RestartRecord>> slots(cfg.restarts);
  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, cfg.restarts));
  if (workers == 1) {
    for (std::size_t k = 0; k < cfg.restarts; ++k) slots[k].emplace(fn(k));
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < cfg.restarts; k = next++) slots[k].emplace(fn(k));
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<RestartRecord> records;
  records.reserve(slots.size());
  for (auto& s : slots) records.push_back(std::move(*s));
  return records;
}

SearchRun assemble(const SearchConfig& cfg, std::vector<RestartRecord> records,
                   std::chrono::steady_clock::time_point start) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < records.size(); ++k) {
    if (records[k].final_value > records[best].final_value) best = k;
  }
  SearchRun run{cfg, records[best].final_value, best, records[best].point, std::move(records), 0.0};
  run.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

template <class Point>
struct AscentResult {
  Point point;
  std::size_t iterations = 0;
  double value = 0.0;
  double residual = 0.0;
  bool monotone = true;
};

// Generic constrained ascent. `retract(x, alpha, dir)` returns the new
// feasible point, `evaluate(x)` returns (value, ascent direction).
template <class Point, class Evaluate, class Retract, class Norm>
AscentResult<Point> ascend_point(Point x, const SearchConfig& cfg, Evaluate&& evaluate,
                                 Retract&& retract, Norm&& dir_norm) {
  auto [f, dir] = evaluate(x);
  double gnorm = dir_norm(dir);
  bool monotone = true;

  std::deque<double> history{f};
  std::size_t iter = 0;
  bool stalled = false;
  while (iter < cfg.max_iters && gnorm > cfg.tol_step) {
    double alpha = kInitialStep;
    bool accepted = false;
    for (int bt = 0; bt <= kMaxBacktracks; ++bt, alpha *= kBacktrack) {
      Point y = retract(x, alpha, dir);
      auto [fy, dy] = evaluate(y);
      if (fy >= f + kSufficientIncrease * alpha * gnorm * gnorm) {
        // Take the best point on the halving grid below the first accepted
        // step; a fixed step can sit exactly at the oscillation threshold of
        // a stiff direction and make no progress.
        for (int extra = bt + 1; extra <= kMaxBacktracks; ++extra) {
          Point z = retract(x, 0.5 * alpha, dir);
          auto [fz, dz] = evaluate(z);
          if (!(fz > fy)) break;
          y = std::move(z);
          fy = fz;
          dy = std::move(dz);
          alpha *= 0.5;
        }
        monotone = monotone && fy >= f;
        x = std::move(y);
        f = fy;
        dir = std::move(dy);
        accepted = true;
        break;
      }
    }
    ++iter;
    if (!accepted) {
      stalled = true;
      break;
    }
    gnorm = dir_norm(dir);
    history.push_back(f);
    if (history.size() > kStallWindow + 1) history.pop_front();
    if (history.size() == kStallWindow + 1 &&
        f - history.front() <= kStallTol * std::abs(f)) {
      stalled = true;
      break;
    }
  }

  // Once function values stop resolving progress, keep stepping while the
  // first-order residual shrinks and the value does not drop.
  if (stalled) {
    double alpha = kInitialStep;
    while (iter < cfg.max_iters && gnorm > cfg.tol_step && alpha >= kMinRefineStep) {
      Point y = retract(x, alpha, dir);
      auto [fy, dy] = evaluate(y);
      const double gy = dir_norm(dy);
      ++iter;
      if (fy >= f && gy < gnorm) {
        x = std::move(y);
        f = fy;
        dir = std::move(dy);
        gnorm = gy;
      } else {
        alpha *= kBacktrack;
      }
    }
  }

  return {std::move(x), iter, f, gnorm, monotone};
}

double frame_inner(const FrameMats& a, const FrameMats& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < 4; ++k) s += frob_inner(a[k], b[k]);
  return s;
}

}  // namespace

std::string_view to_string(Target target) {
  switch (target) {
    case Target::ddvv:
      return "ddvv";
    case Target::bw:
      return "bw";
    case Target::lili:
      return "lili";
    case Target::comass:
      return "comass";
  }
  return "ddvv";
}

Target parse_target(std::string_view name) {
  if (name == "ddvv") return Target::ddvv;
  if (name == "bw") return Target::bw;
  if (name == "lili") return Target::lili;
  if (name == "comass") return Target::comass;
  throw PreconditionError("unknown search target '" + std::string(name) + "'");
}

void SearchConfig::validate() const {
  if (n < 1) throw PreconditionError("search: n must be at least 1");
  if (restarts < 1) throw PreconditionError("search: restarts must be at least 1");
  if (max_iters < 1) throw PreconditionError("search: max_iters must be at least 1");
  if (!(tol_step >= 0.0)) throw PreconditionError("search: tol_step must be nonnegative");
  if (traceless && n < 2) throw PreconditionError("search: traceless search needs n >= 2");
  switch (target) {
    case Target::ddvv:
      if (m_sym + m_skew < 1) throw PreconditionError("search: ddvv needs at least one matrix");
      break;
    case Target::lili:
      if (m_sym < 1 || m_skew != 0) {
        throw PreconditionError("search: lili needs m_sym >= 1 and m_skew = 0");
      }
      break;
    case Target::bw:
      break;
    case Target::comass:
      if (comass_m <= n || (comass_m - n) * n < 4) {
        throw PreconditionError("search: comass needs (comass_m - n) * n >= 4");
      }
      break;
  }
}

MatTuple objective_grad(const MatTuple& t) {
  return from_components(t, raw_pair_gradient(t), false);
}

double target_value(Target target, const MatTuple& t) {
  switch (target) {
    case Target::ddvv:
      return ddvv_gap(t).ratio;
    case Target::lili:
      return lili_gap(t).ratio;
    case Target::bw:
      if (t.size() != 2) throw PreconditionError("bw target: tuple must be (x, y)");
      return bw_gap(t.mat(0), t.mat(1)).ratio;
    case Target::comass:
      break;
  }
  throw PreconditionError("target_value: comass is evaluated on frames");
}

MatTuple target_gradient(Target target, const MatTuple& t, bool traceless_flag) {
  std::vector<Matrix> num;
  std::vector<Matrix> den;
  double n_val = 0.0;
  double d_val = 0.0;
  switch (target) {
    case Target::ddvv:
    case Target::lili: {
      num = raw_pair_gradient(t);
      for (auto& g : num) g *= 2.0;
      n_val = 2.0 * pairwise_commutator_sum(t);
      const double s = t.norm_sq_sum();
      for (const auto& it : t) {
        if (target == Target::ddvv) {
          den.push_back(4.0 * s * it.mat);
        } else {
          den.push_back((6.0 * s - 4.0 * frob_norm_sq(it.mat)) * it.mat);
        }
      }
      d_val = target == Target::ddvv ? ddvv_gap(t).lhs : lili_gap(t).lhs;
      break;
    }
    case Target::bw: {
      if (t.size() != 2) throw PreconditionError("bw target: tuple must be (x, y)");
      const Matrix& x = t.mat(0);
      const Matrix& y = t.mat(1);
      num = {bracket_norm_grad(x, y), bracket_norm_grad(y, x)};
      const double xx = frob_norm_sq(x);
      const double yy = frob_norm_sq(y);
      den = {4.0 * yy * x, 4.0 * xx * y};
      n_val = frob_norm_sq(commutator(x, y));
      d_val = 2.0 * xx * yy;
      break;
    }
    case Target::comass:
      throw PreconditionError("target_gradient: comass is evaluated on frames");
  }
  std::vector<Matrix> grad;
  grad.reserve(t.size());
  if (d_val == 0.0) {
    for (std::size_t r = 0; r < t.size(); ++r) grad.emplace_back(t.n(), t.n());
  } else {
    const double ratio = n_val / d_val;
    for (std::size_t r = 0; r < t.size(); ++r) {
      Matrix g = num[r];
      axpy(-ratio, den[r], g);
      grad.push_back(g / d_val);
    }
  }
  return from_components(t, std::move(grad), traceless_flag);
}

FrameMats comass_gradient(const FrameMats& a) {
  // d phi / d A1 = {A3A4} A2 - {A2A4} A3 + {A2A3} A4; the other slots follow
  // from the alternating property.
  auto lead = [](const Matrix& b, const Matrix& c, const Matrix& d) {
    Matrix g = outer_bracket(c, d) * b;
    g -= outer_bracket(b, d) * c;
    g += outer_bracket(b, c) * d;
    return g;
  };
  return {lead(a[1], a[2], a[3]), -lead(a[0], a[2], a[3]), lead(a[0], a[1], a[3]),
          -lead(a[0], a[1], a[2])};
}

FrameMats orthonormalize_frame(FrameMats a) {
  for (std::size_t k = 0; k < 4; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) axpy(-frob_inner(a[j], a[k]), a[j], a[k]);
    }
    const double nrm = frob_norm(a[k]);
    if (!(nrm > 0.0)) throw ConvergenceError("orthonormalize_frame: rank-deficient frame");
    a[k] /= nrm;
  }
  return a;
}

SearchRun ascend(const SearchConfig& config, std::size_t jobs) {
  config.validate();
  if (config.target == Target::comass) {
    throw PreconditionError("ascend: use comass_search for the comass target");
  }
  const auto start = std::chrono::steady_clock::now();
  auto restart = [&](std::size_t k) {
    const std::uint64_t seed = config.base_seed + k;
    Rng rng(seed);
    MatTuple x = sample_tuple(config, rng);
    auto evaluate = [&](const MatTuple& p) {
      return std::pair<double, MatTuple>(target_value(config.target, p),
                                         target_gradient(config.target, p, config.traceless));
    };
    auto retract = [](const MatTuple& p, double alpha, const MatTuple& d) {
      return normalized(combine(p, alpha, d));
    };
    auto res = ascend_point(std::move(x), config, evaluate, retract,
                            [](const MatTuple& d) { return tuple_norm(d); });
    return RestartRecord{seed,          res.iterations, res.value, res.residual,
                         res.monotone, SearchPoint(std::move(res.point))};
  };
  return assemble(config, run_restarts(config, jobs, restart), start);
}

SearchRun comass_search(const SearchConfig& config, std::size_t jobs) {
  config.validate();
  if (config.target != Target::comass) {
    throw PreconditionError("comass_search: config target must be comass");
  }
  const std::size_t rows = config.comass_m - config.n;
  const std::size_t cols = config.n;
  const auto start = std::chrono::steady_clock::now();
  auto restart = [&](std::size_t k) {
    const std::uint64_t seed = config.base_seed + k;
    Rng rng(seed);
    FrameMats x0;
    for (auto& m : x0) m = random_matrix(rows, cols, rng);
    FrameMats x = orthonormalize_frame(std::move(x0));

    auto evaluate = [](const FrameMats& p) {
      const FrameMats g = comass_gradient(p);
      // Tangent projection: xi_k = G_k - sum_j A_j (<A_j,G_k> + <A_k,G_j>)/2.
      FrameMats xi = g;
      for (std::size_t kk = 0; kk < 4; ++kk)
        for (std::size_t j = 0; j < 4; ++j) {
          const double sym = 0.5 * (frob_inner(p[j], g[kk]) + frob_inner(p[kk], g[j]));
          axpy(-sym, p[j], xi[kk]);
        }
      return std::pair<double, FrameMats>(comass_form(p[0], p[1], p[2], p[3]), std::move(xi));
    };
    auto retract = [](const FrameMats& p, double alpha, const FrameMats& d) {
      FrameMats y = p;
      for (std::size_t kk = 0; kk < 4; ++kk) axpy(alpha, d[kk], y[kk]);
      return orthonormalize_frame(std::move(y));
    };
    auto norm = [](const FrameMats& d) { return std::sqrt(frame_inner(d, d)); };

    auto res = ascend_point(std::move(x), config, evaluate, retract, norm);
    return RestartRecord{seed,          res.iterations, res.value, res.residual,
                         res.monotone, SearchPoint(Frame4(std::move(res.point)))};
  };
  return assemble(config, run_restarts(config, jobs, restart), start);
}

SearchRun run_search(const SearchConfig& config, std::size_t jobs) {
  return config.target == Target::comass ? comass_search(config, jobs) : ascend(config, jobs);
}

MatTuple sorted_by_norm(const MatTuple& t) {
  std::vector<std::size_t> order(t.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return frob_norm_sq(t.mat(a)) > frob_norm_sq(t.mat(b));
  });
  std::vector<MatTuple::Item> items;
  items.reserve(t.size());
  for (std::size_t k : order) items.push_back(t[k]);
  return MatTuple(std::move(items));
}

double stationarity_residual(const MatTuple& t, bool diagnostic) {
  if (t.size() != 3 || !t.all_of(MatKind::symmetric)) {
    throw PreconditionError("stationarity_residual: expects a symmetric triple");
  }
  const Matrix& a = t.mat(0);
  const Matrix& b = t.mat(1);
  const Matrix& c = t.mat(2);
  if (!diagnostic) {
    if (std::abs(t.norm_sq_sum() - 1.0) > 1e-10) {
      throw PreconditionError("stationarity_residual: tuple must have unit total norm");
    }
    if (frob_norm_sq(a) < frob_norm_sq(b) || frob_norm_sq(b) < frob_norm_sq(c)) {
      throw PreconditionError("stationarity_residual: tuple must be norm-sorted");
    }
    if (tuple_norm(target_gradient(Target::ddvv, t, false)) > 1e-8) {
      throw PreconditionError("stationarity_residual: point is not first-order stationary");
    }
  }
  const double ab = frob_norm_sq(commutator(a, b));
  const double bc = frob_norm_sq(commutator(b, c));
  const double ca = frob_norm_sq(commutator(c, a));
  const double lambda = ab + bc + ca;
  return std::abs(2.0 * lambda * frob_norm_sq(a) - ab - ca);
}

std::size_t count_nonzeros(const MatTuple& t) {
  std::size_t k = 0;
  for (const auto& it : t)
    for (double v : it.mat.entries()) k += v != 0.0 ? 1 : 0;
  return k;
}

MatTuple minimize_counterexample(const MatTuple& t, const GapFunction& gap, double tol) {
  auto violates = [&](const MatTuple& x) {
    const GapReport g = gap(x);
    return g.gap < -tol * g.scale;
  };
  if (!violates(t)) {
    throw PreconditionError("minimize_counterexample: input does not violate the inequality");
  }
  constexpr double kInvGolden = 0.6180339887498949;
  constexpr int kMaxPasses = 10;

  MatTuple cur = t;
  // Entries that determine each matrix: the upper triangle for structured
  // kinds (strict for skew), everything for general.
  auto entries_of = [&](std::size_t r) {
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    const std::size_t n = cur.n();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const MatKind kind = cur.kind(r);
        if (kind == MatKind::general || (kind == MatKind::symmetric && j >= i) ||
            (kind == MatKind::skew && j > i)) {
          idx.emplace_back(i, j);
        }
      }
    return idx;
  };
  auto with_entry = [&](std::size_t r, std::size_t i, std::size_t j, double v) {
    MatTuple out = cur;
    Matrix m = out.mat(r);
    m(i, j) = v;
    out.set(r, std::move(m));
    return out;
  };

  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool changed = false;
    for (std::size_t r = 0; r < cur.size(); ++r) {
      for (auto [i, j] : entries_of(r)) {
        if (cur.mat(r)(i, j) == 0.0) continue;
        MatTuple cand = with_entry(r, i, j, 0.0);
        if (violates(cand)) {
          cur = std::move(cand);
          changed = true;
        }
      }
    }
    for (std::size_t r = 0; r < cur.size(); ++r) {
      for (auto [i, j] : entries_of(r)) {
        const double v = cur.mat(r)(i, j);
        if (v == 0.0) continue;
        // Bracket [lo, hi] of shrink factors; hi keeps the violation.
        double lo = 0.0;
        double hi = 1.0;
        while (hi - lo > 1e-6) {
          const double probe = hi - kInvGolden * (hi - lo);
          if (violates(with_entry(r, i, j, probe * v))) {
            hi = probe;
          } else {
            lo = probe;
          }
        }
        if (hi <= 1.0 - 1e-3) {
          cur = with_entry(r, i, j, hi * v);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  const MatTuple out = normalized(cur);
  return violates(out) ? out : cur;
}

}  // namespace ddvv
