// Extremal search over normalized tuples and orthonormal 4-frames.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "ddvv/gap.hpp"
#include "ddvv/inequal.hpp"
#include "ddvv/matcore.hpp"

namespace ddvv {

enum class Target { ddvv, bw, lili, comass };

std::string_view to_string(Target target);
Target parse_target(std::string_view name);

struct SearchConfig {
  std::size_t n = 2;
  std::size_t m_sym = 2;
  std::size_t m_skew = 0;
  Target target = Target::ddvv;
  std::size_t comass_m = 0;  // ambient dimension; frames are (comass_m - n) × n
  std::size_t restarts = 64;
  std::size_t max_iters = 5000;
  std::uint64_t base_seed = 0;
  bool traceless = false;
  double tol_step = 1e-10;  // stop once the first-order residual drops below this

  /// Throws PreconditionError on invalid target/dimension combinations.
  void validate() const;
};

using SearchPoint = std::variant<MatTuple, Frame4>;

struct RestartRecord {
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double final_value = 0.0;
  double first_order_residual = 0.0;
  bool monotone = true;  // every accepted step was nondecreasing
  SearchPoint point;
};

struct SearchRun {
  SearchConfig config;
  double best_value = 0.0;
  std::size_t best_restart = 0;
  SearchPoint best_point;
  std::vector<RestartRecord> records;
  double wall_time = 0.0;  // seconds, not part of the reproducible payload
};

/// Gradient of F = sum_{r<s} |[A_r,A_s]|^2, each component projected onto
/// the kind subspace of A_r.
MatTuple objective_grad(const MatTuple& t);

/// The ascended objective: the inequality's ratio rhs/lhs, a degree-0
/// homogeneous function of the tuple. For bw the tuple is (x, y).
double target_value(Target target, const MatTuple& t);

/// Gradient of target_value, kind-projected, and traceless-projected when
/// `traceless` is set.
MatTuple target_gradient(Target target, const MatTuple& t, bool traceless);

using FrameMats = std::array<Matrix, 4>;

/// Euclidean gradient of the comass form in each argument.
FrameMats comass_gradient(const FrameMats& a);

/// Fixed-order (a1..a4) Gram-Schmidt with a second pass.
FrameMats orthonormalize_frame(FrameMats a);

/// Sphere-constrained Armijo ascent of target_value over random restarts.
SearchRun ascend(const SearchConfig& config, std::size_t jobs = 1);

/// Riemannian ascent of the comass form over orthonormal 4-frames.
SearchRun comass_search(const SearchConfig& config, std::size_t jobs = 1);

/// Dispatches on config.target.
SearchRun run_search(const SearchConfig& config, std::size_t jobs = 1);

/// Reorders entries by descending Frobenius norm (stable).
MatTuple sorted_by_norm(const MatTuple& t);

/// |2 lambda |A|^2 - |[A,B]|^2 - |[A,C]|^2| with lambda = |[A,B]|^2 +
/// |[B,C]|^2 + |[C,A]|^2, for a symmetric triple (A,B,C). Unless
/// `diagnostic` is set, requires sum |.|^2 = 1 within 1e-10, |A|>=|B|>=|C|
/// and a ddvv first-order residual <= 1e-8.
double stationarity_residual(const MatTuple& t, bool diagnostic = false);

using GapFunction = std::function<GapReport(const MatTuple&)>;

/// Shrinks a witness of gap < -tol·scale: greedily zeroes entries, then
/// shrinks each surviving entry by golden-section bracketing, keeping the
/// violation at every accepted change. Output is normalized to
/// sum |A_r|^2 = 1.
MatTuple minimize_counterexample(const MatTuple& t, const GapFunction& gap = ddvv_gap,
                                 double tol = 1e-12);

std::size_t count_nonzeros(const MatTuple& t);

}  // namespace ddvv
