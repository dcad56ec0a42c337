#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "xxz/bethe.hpp"
#include "xxz/correlations.hpp"
#include "xxz/entanglement.hpp"
#include "xxz/errors.hpp"
#include "xxz/scanner.hpp"

namespace xxz::scanner {
namespace {

using Values = std::map<std::string, double>;

std::string column(const std::string& base, int r, bool suffix) {
  return suffix ? base + "_" + std::to_string(r) : base;
}

Values evaluate_point(double delta, std::span<const int> separations, bool ssb, bool suffix) {
  const Anisotropy d(delta);
  Values out;
  out["e0"] = bethe::ground_energy(d).e0;

  const bool ferro = delta < scanner::kTransition;
  std::vector<int> far;
  for (int r : separations) {
    if (r >= 2) far.push_back(r);
  }
  std::vector<SpinCorrelators> far_values;
  if (!ferro && !far.empty()) far_values = correlations::extrapolated_correlators(d, far);

  const double m_ssb = ssb && ferro ? 1.0 : 0.0;
  for (int r : separations) {
    SpinCorrelators sym;
    if (ferro || r == 1) {
      sym = correlations::correlators_at(d, r, false);
    } else {
      sym = far_values[std::find(far.begin(), far.end(), r) - far.begin()];
    }
    SpinCorrelators broken = sym;
    broken.pz = broken.qz = broken.m = m_ssb;

    const auto c_sym = entanglement::concurrence_symmetric(sym);
    const auto c_ssb = entanglement::concurrence_ssb(broken);
    out[column("tzz", r, suffix)] = sym.tzz;
    out[column("txx", r, suffix)] = sym.txx;
    out[column("c_tilde", r, suffix)] = c_sym.c_tilde;
    out[column("c", r, suffix)] = c_sym.c;
    out[column("c_tilde_ssb", r, suffix)] = c_ssb.c_tilde;
    out[column("c_ssb", r, suffix)] = c_ssb.c;
  }
  out["entropy_sym"] = entanglement::entropy_one_site(0.0).s;
  out["entropy_ssb"] = entanglement::entropy_one_site(m_ssb).s;
  return out;
}

Values evaluate_with_context(double delta, std::span<const int> separations, bool ssb,
                             bool suffix) {
  try {
    return evaluate_point(delta, separations, ssb, suffix);
  } catch (const InputError& e) {
    std::ostringstream os;
    os.precision(12);
    os << "sweep point delta = " << delta << ": " << e.what();
    throw DomainError(os.str());
  } catch (const NumericalFailure& e) {
    std::ostringstream os;
    os.precision(12);
    os << "sweep point delta = " << delta << ": " << e.what();
    throw NumericalError(os.str());
  }
}

void validate(double lo, double hi, int n_points, std::span<const int> separations) {
  std::ostringstream os;
  if (!(lo >= bethe::kMinDelta && lo < hi && hi < 1.0)) {
    os << "range " << lo << ":" << hi << " must satisfy -3 <= lo < hi < 1";
    throw DomainError(os.str());
  }
  if (n_points < kMinPoints) {
    os << "points = " << n_points << " is below the minimum of " << kMinPoints;
    throw DomainError(os.str());
  }
  if (separations.empty()) throw DomainError("at least one separation r is required");
  for (int r : separations) {
    if (r < 1 || r > correlations::kMaxSeparation) {
      os << "separation r = " << r << " is not supported (1 <= r <= "
         << correlations::kMaxSeparation << ")";
      throw UnsupportedSeparation(os.str());
    }
  }
}

}  // namespace

const std::vector<double>& SweepResult::series(const std::string& name) const {
  const auto it = signals.find(name);
  if (it == signals.end()) throw MissingSeries("sweep has no series named '" + name + "'");
  return it->second;
}

int default_thread_count() {
  int threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  if (const char* cap = std::getenv("XXZ_THREADS")) {
    const int limit = std::atoi(cap);
    if (limit > 0) threads = std::min(threads, limit);
  }
  return threads;
}

SweepResult sweep(double lo, double hi, int n_points, std::span<const int> separations,
                  bool ssb, const SweepOptions& options) {
  validate(lo, hi, n_points, separations);
  const bool suffix = options.suffix_names.value_or(separations.size() > 1);

  SweepResult result;
  result.lo = lo;
  result.hi = hi;
  result.n_points = n_points;
  result.separations.assign(separations.begin(), separations.end());
  result.ssb = ssb;
  const double step = (hi - lo) / (n_points - 1);
  for (int k = 0; k < n_points; ++k) {
    const double x = k + 1 == n_points ? hi : lo + k * step;
    if (std::abs(x - kTransition) < 1e-12) continue;
    result.grid.push_back(x);
  }

  const std::size_t count = result.grid.size();
  std::vector<Values> rows(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::size_t failed_index = count;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        rows[k] = evaluate_with_context(result.grid[k], separations, ssb, suffix);
      } catch (...) {
        // Keep the lowest failing grid index so the reported error is deterministic.
        std::lock_guard lock(failure_mutex);
        if (k < failed_index) {
          failed_index = k;
          failure = std::current_exception();
        }
      }
    }
  };
  const int threads = std::max(1, options.threads > 0 ? options.threads : default_thread_count());
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t k = 0; k < count; ++k) {
    for (const auto& [name, value] : rows[k]) result.signals[name].push_back(value);
  }

  if (lo <= kTransition && kTransition <= hi) {
    ExcludedPoint ex;
    ex.location = kTransition;
    ex.offset = correlations::kOneSidedOffset;
    ex.left = evaluate_with_context(kTransition - ex.offset, separations, ssb, suffix);
    ex.right = evaluate_with_context(kTransition + ex.offset, separations, ssb, suffix);
    result.excluded = std::move(ex);
  }
  return result;
}

SweepResult sweep(double lo, double hi, int n_points, int r, bool ssb,
                  const SweepOptions& options) {
  const int separations[] = {r};
  return sweep(lo, hi, n_points, separations, ssb, options);
}

}  // namespace xxz::scanner
