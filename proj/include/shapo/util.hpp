#ifndef SHAPO_UTIL_HPP
#define SHAPO_UTIL_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace shapo {

// Thrown when a mathematical precondition fails at runtime (pole, singular
// block, inconsistent linear system).  Distinct from std::invalid_argument,
// which is reserved for malformed user input.
class math_error : public std::runtime_error {
public:
    explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

// Global scalar-operation counters, used by the bench harness.
struct OpCounters {
    std::atomic<std::uint64_t> add{0};
    std::atomic<std::uint64_t> mul{0};
    std::atomic<std::uint64_t> div{0};
    std::atomic<std::uint64_t> gcd{0};
};

OpCounters& op_counters();

struct OpSnapshot {
    std::uint64_t add = 0, mul = 0, div = 0, gcd = 0;
};

OpSnapshot snapshot_ops();
OpSnapshot diff_ops(const OpSnapshot& before, const OpSnapshot& after);

// Thread count for parallel sections: SHAPOFORM_THREADS, else hardware.
unsigned worker_threads();

// Runs fn(i) for i in [0, n).  Results must be written to caller-owned slots
// so assembly order stays deterministic.  Falls back to a serial loop when
// one worker is requested or n is small.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace shapo

#endif
