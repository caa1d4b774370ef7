#pragma once

#include <chrono>
#include <cstdint>
#include <string>

namespace gamelab {

enum class Winner { Spoiler, Duplicator, Unknown };

std::string to_string(Winner w);

struct SearchLimits {
  std::uint64_t max_nodes = 10'000'000;
  double max_seconds = 60.0;

  // Defaults, overridable through GAMELAB_MAX_NODES and GAMELAB_MAX_SECONDS.
  static SearchLimits from_env();
  static SearchLimits unlimited() { return {UINT64_MAX, 1e300}; }
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t memo_hits = 0;
  double seconds = 0.0;
};

// Thrown internally by solvers when a limit is hit; callers map it to Winner::Unknown.
struct BudgetExhausted {};

class Budget {
 public:
  explicit Budget(const SearchLimits& limits)
      : limits_(limits), start_(std::chrono::steady_clock::now()) {}

  // Counts one node; throws BudgetExhausted when over a limit.
  void tick() {
    if (++stats_.nodes > limits_.max_nodes) throw BudgetExhausted{};
    if ((stats_.nodes & 1023) == 0 && elapsed() > limits_.max_seconds) throw BudgetExhausted{};
  }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  SearchStats& stats() { return stats_; }
  SearchStats finish() {
    stats_.seconds = elapsed();
    return stats_;
  }

 private:
  SearchLimits limits_;
  std::chrono::steady_clock::time_point start_;
  SearchStats stats_;
};

}  // namespace gamelab
