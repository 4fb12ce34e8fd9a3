#include "toric/catalog.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace toric {

namespace {

Fan fan2(std::vector<LatticeVector> rays, std::vector<RayIndexSet> cones)
{
    return require_valid(Fan(2, std::move(rays), std::move(cones)));
}

Fan p1_fan() { return projective_space_fan(1); }

Fan p112_fan() { return fan2({{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}}); }

// Quadric cone xy = zw: one non-simplicial cone over a square.
Fan qc3_fan() { return require_valid(Fan(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}, {{0, 1, 2, 3}})); }

IntegerMatrix block_diagonal(const IntegerMatrix& a, const IntegerMatrix& b)
{
    IntegerMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

// Projection of the first `keep` coordinates.
IntegerMatrix projection(std::size_t keep, std::size_t rank, std::size_t offset = 0)
{
    IntegerMatrix m(keep, rank);
    for (std::size_t i = 0; i < keep; ++i)
        m(i, offset + i) = 1;
    return m;
}

ToricContraction times_p1(const ToricContraction& f)
{
    return validate_contraction(product_fan(f.source(), p1_fan()), product_fan(f.target(), p1_fan()),
                                block_diagonal(f.pi(), IntegerMatrix::identity(1)));
}

Instance make(std::string name, const ToricContraction& f, const BoundaryData& b)
{
    return {std::move(name), build_pair(f.source(), b), f};
}

Instance make(std::string name, const ToricContraction& f) { return make(std::move(name), f, anticanonical_boundary(f.source())); }

// Counter-clockwise order of plane vectors starting from the positive x-axis.
bool angle_less(const LatticeVector& a, const LatticeVector& b)
{
    auto half = [](const LatticeVector& v) { return v[1] > 0 || (v[1] == 0 && v[0] > 0) ? 0 : 1; };
    if (half(a) != half(b))
        return half(a) < half(b);
    return a[0] * b[1] - a[1] * b[0] > 0;
}

Fan complete_plane_fan(std::vector<LatticeVector> rays)
{
    std::sort(rays.begin(), rays.end(), angle_less);
    std::vector<RayIndexSet> cones;
    for (std::size_t i = 0; i < rays.size(); ++i)
        cones.push_back({i, (i + 1) % rays.size()});
    return Fan(2, std::move(rays), std::move(cones));
}

std::pair<long, long> range_or(const FamilySpec& s, long lo, long hi)
{
    return {s.lo ? s.lo : lo, s.hi ? s.hi : hi};
}

std::vector<Instance> ladder_family(const FamilySpec& s)
{
    auto [lo, hi] = range_or(s, 2, 12);
    std::vector<Instance> out;
    for (long k = lo; k <= hi; ++k) {
        Fan f = ladder_fan(k);
        out.push_back(make("X" + std::to_string(k), project_to_p1(f), anticanonical_boundary(f, k)));
    }
    return out;
}

std::vector<Instance> hirzebruch_family(const FamilySpec& s)
{
    auto [lo, hi] = range_or(s, 0, 4);
    std::vector<Instance> out;
    for (long a = lo; a <= hi; ++a)
        out.push_back(make("F" + std::to_string(a), project_to_p1(hirzebruch_fan(a))));
    return out;
}

std::vector<Instance> wps_family(const FamilySpec&)
{
    const std::vector<std::vector<long>> weights = {{1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {1, 2, 3},
                                                    {1, 2, 5}, {1, 3, 4}, {2, 3, 5}, {1, 1, 1, 2}};
    std::vector<Instance> out;
    for (const auto& w : weights) {
        std::vector<Integer> ws(w.begin(), w.end());
        std::string name = "P(";
        for (std::size_t i = 0; i < w.size(); ++i)
            name += (i ? "," : "") + std::to_string(w[i]);
        out.push_back(make(name + ")", contract_to_point(weighted_projective_fan(ws))));
    }
    return out;
}

std::vector<Instance> products_family(const FamilySpec& s)
{
    auto [lo, hi] = range_or(s, 2, 4);
    std::vector<Instance> out;
    for (long k = lo; k <= hi; ++k) {
        Fan f = ladder_fan(k);
        out.push_back(make("X" + std::to_string(k) + "xP1", times_p1(project_to_p1(f)), anticanonical_boundary(
                                                                product_fan(f, p1_fan()), k)));
    }
    Fan p2 = projective_space_fan(2);
    out.push_back(make("P2xP1/P1", validate_contraction(product_fan(p2, p1_fan()), p1_fan(), projection(1, 3, 2))));
    out.push_back(make("P112xP1/P1", validate_contraction(product_fan(p112_fan(), p1_fan()), p1_fan(),
                                                          projection(1, 3, 2))));
    out.push_back(make("F1xP1", times_p1(project_to_p1(hirzebruch_fan(1)))));
    out.push_back(make("X2xP1xP1", times_p1(times_p1(project_to_p1(ladder_fan(2)))), anticanonical_boundary(
                                       product_fan(product_fan(ladder_fan(2), p1_fan()), p1_fan()), 2)));
    out.push_back(make("P2xP2/P2", validate_contraction(product_fan(p2, p2), p2, projection(2, 4, 2))));
    return out;
}

std::vector<Instance> subdivision_family(const FamilySpec& s)
{
    auto [lo, hi] = range_or(s, 2, 6);
    std::vector<Instance> out;
    for (long k = lo; k <= hi; ++k) {
        Fan f = ladder_fan(k);
        Fan up = star_subdivide(f, primitive_part(LatticeVector{k, 2}).primitive);
        out.push_back(make("X" + std::to_string(k) + "+" + primitive_part(LatticeVector{k, 2}).primitive.str(),
                           project_to_p1(up)));
        out.push_back(make("X" + std::to_string(k) + "+(-1,-1)", project_to_p1(star_subdivide(f, {-1, -1}))));
    }
    Fan blown = star_subdivide(projective_space_fan(2), {1, 1});
    out.push_back(make("Bl(1,1)P2", validate_contraction(blown, p1_fan(), IntegerMatrix{{1, -1}})));
    return out;
}

std::vector<Instance> quotient_family(const FamilySpec&)
{
    std::vector<Instance> out;
    // P2 with its lattice replaced by an index-3 superlattice: rays B e_i.
    Fan fake = fan2({{2, -1}, {-1, 2}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}});
    out.push_back(make("P2/3", contract_to_point(fake)));
    Fan quad = fan2({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    out.push_back(make("P1xP1/2", contract_to_point(quad)));
    Fan x2q = fan2({{2, 1}, {0, 1}, {-2, -1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    out.push_back(make("P1xP1/2->P1", project_to_p1(x2q)));
    return out;
}

std::vector<Instance> random_family(const FamilySpec& s)
{
    std::mt19937_64 rng(s.seed);
    auto uniform = [&](long a, long b) { return std::uniform_int_distribution<long>(a, b)(rng); };
    std::vector<Instance> out;
    while (out.size() < s.count) {
        std::vector<LatticeVector> rays = {{0, 1}, {0, -1}};
        for (int side : {1, -1}) {
            long n = uniform(1, 2);
            for (long i = 0; i < n; ++i) {
                LatticeVector v{side * uniform(1, 4), uniform(-4, 4)};
                v = primitive_part(v).primitive;
                if (std::find(rays.begin(), rays.end(), v) == rays.end())
                    rays.push_back(v);
            }
        }
        Fan f = complete_plane_fan(rays);
        if (!validate_fan(f).valid)
            continue;
        ToricContraction c = project_to_p1(f);
        std::string name = "random" + std::to_string(out.size());
        if (uniform(0, 1))
            out.push_back(make(name, c));
        else
            out.push_back(make(name + "xP1", times_p1(c)));
    }
    return out;
}

std::vector<Instance> fixture_family()
{
    std::vector<Instance> out;
    for (const auto& name : fixture_names()) {
        Fixture fx = fixture(name);
        if (fx.contraction)
            out.push_back({fx.name, fx.pair, *fx.contraction});
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- fans

Fan ladder_fan(long k)
{
    return fan2({{k, 1}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

Fan hirzebruch_fan(long a)
{
    return fan2({{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

Fan weighted_projective_fan(const std::vector<Integer>& weights)
{
    const std::size_t n = weights.size();
    if (n < 2)
        throw ToricError(ErrorKind::DimensionMismatch, "need at least two weights");
    IntegerMatrix w(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (weights[i] <= 0)
            throw ToricError(ErrorKind::InvalidFan, "weights must be positive");
        w(i, 0) = weights[i];
    }
    HermiteForm h = hermite_decompose(w);
    if (h.H(0, 0) != 1)
        throw ToricError(ErrorKind::NotPrimitive, "weights have a common factor");
    // T w = e_1, so Z^n / Z w is read off from the last n-1 rows of T.
    std::vector<LatticeVector> rays;
    for (std::size_t i = 0; i < n; ++i) {
        LatticeVector v(n - 1);
        for (std::size_t r = 1; r < n; ++r)
            v[r - 1] = h.T(r, i);
        rays.push_back(v);
    }
    std::vector<RayIndexSet> cones;
    for (std::size_t skip = 0; skip < n; ++skip) {
        RayIndexSet c;
        for (std::size_t i = 0; i < n; ++i)
            if (i != skip)
                c.push_back(i);
        cones.push_back(c);
    }
    return require_valid(Fan(n - 1, std::move(rays), std::move(cones)));
}

ToricContraction project_to_p1(const Fan& f) { return validate_contraction(f, p1_fan(), projection(1, f.rank())); }

ToricContraction contract_to_point(const Fan& f) { return validate_contraction(f, torus_fan(0), IntegerMatrix(0, f.rank())); }

BoundaryData anticanonical_boundary(const Fan& f, long m)
{
    const std::size_t n = f.ray_count();
    return {InvariantDivisor::zero(n), {{Rational(1, m), InvariantDivisor::boundary(n).scaled(m)}}};
}

BoundaryData anticanonical_boundary(const Fan& f)
{
    const std::size_t n = f.ray_count();
    auto m = cartier_index(f, InvariantDivisor::boundary(n));
    if (m && positivity_check(build_pair(f), InvariantDivisor::boundary(n), Positivity::nef))
        return anticanonical_boundary(f, static_cast<long>(*m));
    return {InvariantDivisor::boundary(n), {}};
}

// ---------------------------------------------------------------- fixtures

std::vector<std::string> fixture_names()
{
    return {"P1",         "P2",           "P112",          "F1",           "F2",         "X2",
            "QC3",        "P1xP1",        "P112xP1",       "X2xP1",        "X2->P1",     "F2->P1",
            "F1->P1",     "F1->pt",       "P2->pt",        "P112->pt",     "P1xP1->P1",  "P112xP1->P1",
            "X2xP1->P1xP1", "X2xP1->X2"};
}

Fixture fixture(const std::string& name)
{
    const std::map<std::string, std::function<Fan()>> fans = {
        {"P1", p1_fan},
        {"P2", [] { return projective_space_fan(2); }},
        {"P112", p112_fan},
        {"F1", [] { return hirzebruch_fan(1); }},
        {"F2", [] { return hirzebruch_fan(2); }},
        {"X2", [] { return ladder_fan(2); }},
        {"QC3", qc3_fan},
        {"P1xP1", [] { return product_fan(p1_fan(), p1_fan()); }},
        {"P112xP1", [] { return product_fan(p112_fan(), p1_fan()); }},
        {"X2xP1", [] { return product_fan(ladder_fan(2), p1_fan()); }},
    };
    if (auto it = fans.find(name); it != fans.end())
        return {name, build_pair(it->second()), std::nullopt};

    std::optional<ToricContraction> f;
    if (name == "X2->P1")
        f = project_to_p1(ladder_fan(2));
    else if (name == "F2->P1")
        f = project_to_p1(hirzebruch_fan(2));
    else if (name == "F1->P1")
        f = project_to_p1(hirzebruch_fan(1));
    else if (name == "F1->pt")
        f = contract_to_point(hirzebruch_fan(1));
    else if (name == "P2->pt")
        f = contract_to_point(projective_space_fan(2));
    else if (name == "P112->pt")
        f = contract_to_point(p112_fan());
    else if (name == "P1xP1->P1")
        f = project_to_p1(product_fan(p1_fan(), p1_fan()));
    else if (name == "P112xP1->P1")
        f = validate_contraction(product_fan(p112_fan(), p1_fan()), p1_fan(), projection(1, 3, 2));
    else if (name == "X2xP1->P1xP1")
        f = times_p1(project_to_p1(ladder_fan(2)));
    else if (name == "X2xP1->X2")
        f = validate_contraction(product_fan(ladder_fan(2), p1_fan()), ladder_fan(2), projection(2, 3));
    if (!f)
        throw ToricError(ErrorKind::UnknownFamily, "no fixture named '" + name + "'");

    // Fixture boundaries are (1/m) general members of |-mK| with m even, so
    // that X2 carries the boundary 1/2 G(-2K).
    const Fan& src = f->source();
    Integer m = *cartier_index(src, InvariantDivisor::boundary(src.ray_count()));
    m = lcm(m, Integer(2));
    return {name, build_pair(src, anticanonical_boundary(src, static_cast<long>(m))), f};
}

// ---------------------------------------------------------------- families

std::vector<std::string> family_names()
{
    return {"ladder", "hirzebruch", "wps", "products", "subdivision", "quotient", "terminal3", "random", "fixtures",
            "suite"};
}

FamilySpec parse_family(const std::string& text, std::uint64_t seed)
{
    FamilySpec s;
    s.seed = seed;
    auto colon = text.find(':');
    s.name = text.substr(0, colon);
    const auto names = family_names();
    if (std::find(names.begin(), names.end(), s.name) == names.end())
        throw ToricError(ErrorKind::UnknownFamily, "unknown family '" + s.name + "'");
    if (colon != std::string::npos) {
        std::string range = text.substr(colon + 1);
        auto dash = range.find('-');
        try {
            s.lo = std::stol(range.substr(0, dash));
            s.hi = dash == std::string::npos ? s.lo : std::stol(range.substr(dash + 1));
        } catch (const std::exception&) {
            throw ToricError(ErrorKind::Parse, "bad family range '" + range + "'");
        }
        if (s.name == "random")
            s.count = static_cast<std::size_t>(s.hi);
    }
    return s;
}

std::vector<Instance> terminal_threefolds(long max_m)
{
    const Fan p1 = p1_fan();
    auto build = [](const LatticeVector& up, const LatticeVector& down) {
        return Fan(3, {{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, up, down},
                   {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {0, 1, 4}, {1, 2, 4}, {2, 0, 4}});
    };
    // Terminality is checked cone by cone, so the two halves are found
    // separately against a smooth opposite half and then combined.
    std::vector<LatticeVector> halves;
    for (long m = 1; m <= max_m; ++m)
        for (long a = 0; a < m; ++a)
            for (long b = 0; b < m; ++b) {
                LatticeVector u{a, b, m};
                if (!u.is_primitive())
                    continue;
                Fan f = build(u, {0, 0, -1});
                if (validate_fan(f).valid && is_terminal(build_pair(f)))
                    halves.push_back(u);
            }
    std::vector<Instance> out;
    for (const auto& up : halves)
        for (const auto& h : halves) {
            LatticeVector down = h;
            down[2] = -h[2];
            Fan f = build(up, down);
            if (!validate_fan(f).valid)
                continue;
            ToricPair p = build_pair(f);
            if (!is_terminal(p))
                continue;
            ToricContraction c = validate_contraction(f, p1, IntegerMatrix{{0, 0, 1}});
            if (!is_mori_fiber_space(p, c))
                continue;
            out.push_back({"T" + up.str() + down.str(), p, c});
        }
    return out;
}

std::vector<Instance> generate_family(const FamilySpec& spec)
{
    const std::string& n = spec.name;
    if (n == "ladder")
        return ladder_family(spec);
    if (n == "hirzebruch")
        return hirzebruch_family(spec);
    if (n == "wps")
        return wps_family(spec);
    if (n == "products")
        return products_family(spec);
    if (n == "subdivision")
        return subdivision_family(spec);
    if (n == "quotient")
        return quotient_family(spec);
    if (n == "terminal3")
        return terminal_threefolds(spec.hi ? spec.hi : 8);
    if (n == "random")
        return random_family(spec);
    if (n == "fixtures")
        return fixture_family();
    if (n == "suite") {
        std::vector<Instance> out = fixture_family();
        for (const char* part : {"ladder", "hirzebruch", "wps", "products", "subdivision", "quotient"}) {
            auto more = generate_family(FamilySpec{part, 0, 0, spec.seed, spec.count});
            out.insert(out.end(), more.begin(), more.end());
        }
        return out;
    }
    throw ToricError(ErrorKind::UnknownFamily, "unknown family '" + n + "'");
}

// ---------------------------------------------------------------- experiments

void ExperimentConfig::validate() const
{
    if (epsilon <= 0 || epsilon > 1)
        throw ToricError(ErrorKind::InvalidConfig, "epsilon must lie in (0,1], got " + format_rational(epsilon));
    if (alpha <= 0 || alpha >= 1)
        throw ToricError(ErrorKind::InvalidConfig, "alpha must lie in (0,1), got " + format_rational(alpha));
    if (box < 4)
        throw ToricError(ErrorKind::InvalidConfig, "box must be at least 4, got " + std::to_string(box));
}

Integer max_fiber_multiplicity(const ToricContraction& f)
{
    Integer best = 1;
    for (const auto& w : f.target().rays())
        for (const auto& c : fiber_multiplicities_over(f, w))
            best = std::max(best, c.multiplicity);
    return best;
}

MultiplicityTable run_multiplicity_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    auto instances = generate_family(parse_family(cfg.family, cfg.seed));
    MultiplicityTable table;
    table.rows = parallel_map(
        instances,
        [&](const Instance& inst) {
            MultiplicityRow row;
            row.name = inst.name;
            row.mld = mld_and_eps_check(inst.pair, cfg.epsilon).mld_toric;
            row.max_multiplicity = max_fiber_multiplicity(inst.contraction);
            row.qualifies = row.mld >= cfg.epsilon;
            return row;
        },
        cfg.workers);
    for (const auto& row : table.rows)
        if (row.qualifies && (!table.max_qualifying || row.max_multiplicity > *table.max_qualifying))
            table.max_qualifying = row.max_multiplicity;
    return table;
}

BaseInfimum averaged_delta(const ToricPair& p, const ToricContraction& f, const Rational& alpha, long box)
{
    if (alpha < 0 || alpha > 1)
        throw ToricError(ErrorKind::AlphaOutOfRange, "alpha must lie in [0,1], got " + format_rational(alpha));
    ToricPair averaged = build_pair(p.fan(), average_boundary(p.boundary(), p.fan(), alpha));
    return base_lct_infimum(averaged, f, static_cast<int>(box));
}

DeltaTable run_delta_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    auto instances = generate_family(parse_family(cfg.family, cfg.seed));
    DeltaTable table;
    table.rows = parallel_map(
        instances,
        [&](const Instance& inst) {
            DeltaRow row;
            row.name = inst.name;
            row.alpha = cfg.alpha;
            row.eps_lc = mld_and_eps_check(inst.pair, cfg.epsilon).eps_lc;
            if (inst.contraction.target().rank() > 0) {
                BaseInfimum b = averaged_delta(inst.pair, inst.contraction, cfg.alpha, cfg.box);
                row.delta = b.delta;
                row.oracle_agrees = b.exact_agrees_with_oracle;
            }
            return row;
        },
        cfg.workers);
    for (const auto& row : table.rows)
        if (row.eps_lc && row.delta && (!table.min_delta || *row.delta < *table.min_delta))
            table.min_delta = row.delta;
    return table;
}

}  // namespace toric
