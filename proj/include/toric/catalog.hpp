#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "toric/fibration.hpp"
#include "toric/pair.hpp"

namespace toric {

/// A pair together with a contraction of its fan.
struct Instance
{
    std::string name;
    ToricPair pair;
    ToricContraction contraction;
};

/// Named built-in example: a fan, a pair on it and optionally a contraction.
struct Fixture
{
    std::string name;
    ToricPair pair;
    std::optional<ToricContraction> contraction;
};

std::vector<std::string> fixture_names();
/// Throws UnknownFamily for an unknown name.
Fixture fixture(const std::string& name);

/// Xk: rays (k,1), (0,1), (-1,0), (0,-1).
Fan ladder_fan(long k);
/// Hirzebruch surface F_a: rays (1,0), (0,1), (-1,a), (0,-1).
Fan hirzebruch_fan(long a);
/// Weighted projective space; ray i is the image of e_i in Z^n / Z w.
Fan weighted_projective_fan(const std::vector<Integer>& weights);
/// The projection of the first coordinates onto P1 or the point.
ToricContraction project_to_p1(const Fan& f);
ToricContraction contract_to_point(const Fan& f);

/// (1/m) general member of |-mK|, m the least multiple with -mK Cartier, when
/// -mK is nef; otherwise the toric boundary.
BoundaryData anticanonical_boundary(const Fan& f);
/// (1/m) general member of |-mK| for a given m.
BoundaryData anticanonical_boundary(const Fan& f, long m);

struct FamilySpec
{
    std::string name;
    long lo = 0;     ///< family parameter range, 0 for the family default
    long hi = 0;
    std::uint64_t seed = 0;
    std::size_t count = 20;  ///< random family size
};

/// Accepts "name" or "name:lo-hi".  Throws UnknownFamily.
FamilySpec parse_family(const std::string& text, std::uint64_t seed = 0);
std::vector<std::string> family_names();
/// Families: ladder, hirzebruch, wps, products, subdivision, quotient,
/// terminal3, random, fixtures, suite.  Throws UnknownFamily.
std::vector<Instance> generate_family(const FamilySpec& spec);

/// Toric terminal 3-folds over P1 with fibre P2: extra rays u0 = (a,b,m0) and
/// u1 = (c,d,-m1) with m0, m1 <= max_m.  Only Mori fibre spaces with mld > 1
/// are kept.
std::vector<Instance> terminal_threefolds(long max_m);

struct ExperimentConfig
{
    Rational epsilon = 1;
    Rational alpha = Rational(1, 2);
    long box = 12;
    std::string family = "ladder";
    std::uint64_t seed = 0;
    unsigned workers = 1;

    /// Throws InvalidConfig unless eps in (0,1], alpha in (0,1), box >= 4.
    void validate() const;
};

struct MultiplicityRow
{
    std::string name;
    Rational mld;
    Integer max_multiplicity;
    bool qualifies = false;  ///< mld >= epsilon
};

struct MultiplicityTable
{
    std::vector<MultiplicityRow> rows;
    std::optional<Integer> max_qualifying;
};

MultiplicityTable run_multiplicity_experiment(const ExperimentConfig& cfg);

/// Largest fibre multiplicity over the target rays; 1 when the target has none.
Integer max_fiber_multiplicity(const ToricContraction& f);

struct DeltaRow
{
    std::string name;
    Rational alpha;
    std::optional<Rational> delta;  ///< absent when the base is a point
    bool eps_lc = false;
    bool oracle_agrees = false;
};

struct DeltaTable
{
    std::vector<DeltaRow> rows;
    std::optional<Rational> min_delta;  ///< over eps-lc inputs
};

DeltaTable run_delta_experiment(const ExperimentConfig& cfg);

/// delta for the averaged boundary alpha B + (1 - alpha) Delta; alpha in [0,1].
BaseInfimum averaged_delta(const ToricPair& p, const ToricContraction& f, const Rational& alpha, long box);

/// Applies fn to every item on up to `workers` threads; output order follows input.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F fn, unsigned workers)
    -> std::vector<decltype(fn(items.front()))>
{
    using R = decltype(fn(items.front()));
    std::vector<std::optional<R>> slots(items.size());
    std::vector<std::exception_ptr> errors(items.size());
    auto run = [&](std::size_t start, std::size_t step) {
        for (std::size_t i = start; i < items.size(); i += step) {
            try {
                slots[i] = fn(items[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run, w, workers);
        for (auto& t : pool)
            t.join();
    }
    std::vector<R> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

}  // namespace toric
