/* Operator oracles and vector-space primitives used by all solvers:
 * linear maps with adjoints, Lipschitz operators, prox/resolvent oracles,
 * call counting, operator-norm estimation and the Moreau-style conjugate
 * prox. Vectors are plain std::vector<double>; every oracle is a value
 * type holding std::function callables, immutable after construction.
 */
#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

namespace fbfpen {

using Vec = std::vector<double>;

double dot(const Vec& x, const Vec& y);
double norm(const Vec& x);
double dist(const Vec& x, const Vec& y);

/// Thrown when an iterate leaves the finite range (or exceeds the blow-up
/// guard); carries the offending iteration index.
class divergence_error : public std::runtime_error {
public:
    divergence_error(std::size_t iteration, const std::string& what)
        : std::runtime_error(what), iteration_(iteration) {}
    std::size_t iteration() const { return iteration_; }

private:
    std::size_t iteration_;
};

/// Linear operator oracle with adjoint and an upper bound on the operator
/// norm. apply/adjoint_apply must satisfy <apply(x),y> = <x,adjoint_apply(y)>.
struct LinearMap {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    double norm_bound = 0.0;
    std::function<Vec(const Vec&)> apply;
    std::function<Vec(const Vec&)> adjoint_apply;
};

/// Single-valued monotone operator with a known Lipschitz constant.
/// A constant of 0 encodes the zero operator (eta = infinity in the
/// penalty problem).
struct LipschitzOp {
    std::size_t dim = 0;
    double lipschitz_constant = 0.0;
    std::function<Vec(const Vec&)> eval;
};

/// Resolvent/prox oracle: prox(gamma, x) = J_{gamma A}(x) = prox_{gamma f}(x).
struct ProxOracle {
    std::size_t dim = 0;
    std::function<Vec(double, const Vec&)> prox;
};

/// Shared call counter; safe to increment from concurrent runs.
class CallCounter {
public:
    void bump() { count_.fetch_add(1, std::memory_order_relaxed); }
    std::int64_t count() const { return count_.load(std::memory_order_relaxed); }
    void reset() { count_.store(0, std::memory_order_relaxed); }

private:
    std::atomic<std::int64_t> count_{0};
};

using CounterPtr = std::shared_ptr<CallCounter>;

/// Wraps an operator so every eval/prox invocation bumps the counter;
/// behavior is otherwise unchanged.
LipschitzOp wrap_counted(const LipschitzOp& op, CounterPtr counter);
ProxOracle wrap_counted(const ProxOracle& op, CounterPtr counter);

LipschitzOp zero_op(std::size_t dim);
LinearMap identity_map(std::size_t dim);
LinearMap matrix_map(std::vector<Vec> rows);  // dense map, norm bound estimated

/// Power-iteration estimate of the operator norm (largest singular value).
/// The start vector is generated from a fixed seed, so the result is
/// deterministic. Returns 0 for the zero map.
double op_norm_estimate(const LinearMap& map, int max_iters = 1000,
                        double tol = 1e-9);

/// Safety factor applied to estimated norms before they are used as
/// Lipschitz bounds in schedule validation.
inline constexpr double norm_safety_factor = 1.0001;

/// prox_{gamma g*}(x) = x - gamma * prox_{g/gamma}(x/gamma), the conjugate
/// prox obtained from the prox of g itself.
Vec moreau_conjugate_prox(const ProxOracle& g_prox, double gamma, const Vec& x);

/// Entrywise clamp to [lo, hi]; prox of the box indicator for every gamma.
Vec prox_box(const Vec& x, double lo, double hi);

/// argmin ||z - x|| subject to Kz = b, via the normal equations
/// (K K*) mu = Kx - b on an explicitly assembled small K.
Vec proj_affine(const LinearMap& K, const Vec& b, const Vec& x);

/// splitmix64: the 64-bit mixing generator used everywhere randomness must
/// be bit-exact across implementations. Constants are the standard ones
/// (Steele, Lea, Flood 2014): increment 0x9E3779B97F4A7C15, multipliers
/// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    /// uniform double in [0, 1), 53 random bits
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

} // namespace fbfpen
