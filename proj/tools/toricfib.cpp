// Command-line front end: reads fan, pair and contraction documents and
// prints exact invariants as JSON or aligned text.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "toric/io.hpp"

using namespace toric;
using io::Json;

namespace {

struct Options
{
    std::string input;
    std::string out;
    bool json = false;
    std::string epsilon = "1";
    std::string alpha;
    long box = 12;
    std::string family = "ladder";
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string direction;
    std::string vector;
    std::string sublattice;
    std::string fixture;
    bool list = false;
};

struct Outcome
{
    Json result;
    int code = 0;
};

LatticeVector parse_vector(const std::string& text)
{
    std::string cleaned;
    for (char c : text)
        cleaned += (c == '[' || c == ']' || c == '(' || c == ')') ? ' ' : c;
    std::vector<Integer> coords;
    std::stringstream ss(cleaned);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long v = std::stol(item, &used);
            coords.push_back(v);
        } catch (const std::exception&) {
            throw ToricError(ErrorKind::Parse, "bad integer vector '" + text + "'");
        }
    }
    if (coords.empty())
        throw ToricError(ErrorKind::Parse, "empty integer vector");
    return LatticeVector(std::move(coords));
}

Json input_document(const Options& o)
{
    if (o.input.empty())
        throw ToricError(ErrorKind::Parse, "--input is required");
    return io::read_json_file(o.input);
}

Fan any_fan(const Json& doc)
{
    if (doc.contains("rank"))
        return io::fan_from_json(doc);
    if (doc.contains("fan"))
        return io::fan_from_json(doc.at("fan"));
    if (doc.contains("source"))
        return io::fan_from_json(doc.at("source"));
    throw ToricError(ErrorKind::Parse, "document holds no fan");
}

Outcome cmd_validate(const Options& o)
{
    Json doc = input_document(o);
    Json report;
    Fan f = any_fan(doc);
    FanValidation v = validate_fan(f);
    report["fan"] = io::to_json(v);
    bool ok = v.valid;
    if (ok && (doc.contains("contraction") || doc.contains("pi"))) {
        try {
            if (doc.contains("contraction"))
                io::contraction_from_json(doc.at("contraction"), f);
            else
                io::contraction_from_json(doc);
            report["contraction"] = {{"valid", true}};
        } catch (const ToricError& e) {
            if (e.kind() == ErrorKind::Parse)
                throw;
            report["contraction"] = {{"valid", false}, {"message", e.what()}};
            ok = false;
        }
    }
    if (ok && doc.contains("fan") && doc.contains("boundary")) {
        try {
            io::pair_from_json(doc);
            report["pair"] = {{"valid", true}};
        } catch (const ToricError& e) {
            if (e.kind() == ErrorKind::Parse)
                throw;
            report["pair"] = {{"valid", false}, {"message", e.what()}};
            ok = false;
        }
    }
    report["valid"] = ok;
    return {report, ok ? 0 : 1};
}

Outcome cmd_classify(const Options& o)
{
    Fan f = require_valid(any_fan(input_document(o)));
    Json report = io::to_json(classify_fan(f));
    report["rank"] = f.rank();
    report["rays"] = f.ray_count();
    report["max_cones"] = f.cone_count();
    return {report};
}

Outcome cmd_mld(const Options& o)
{
    ToricPair p = io::pair_from_json(input_document(o));
    return {io::to_json(mld_and_eps_check(p, parse_rational(o.epsilon)))};
}

Outcome cmd_lct(const Options& o)
{
    auto inst = io::instance_from_json(input_document(o));
    Json rows = Json::array();
    if (!o.direction.empty()) {
        rows.push_back(io::to_json(lct_over_direction(inst.pair, inst.contraction, parse_vector(o.direction))));
    } else {
        for (const auto& r : discriminant_thresholds(inst.pair, inst.contraction))
            rows.push_back(io::to_json(r));
    }
    return {{{"thresholds", rows}}};
}

Outcome cmd_adjunction(const Options& o)
{
    auto inst = io::instance_from_json(input_document(o));
    return {io::to_json(discriminant_divisor(inst.pair, inst.contraction))};
}

Outcome cmd_base_inf(const Options& o)
{
    auto inst = io::instance_from_json(input_document(o));
    if (o.box < 1)
        throw ToricError(ErrorKind::InvalidConfig, "--box must be positive");
    BaseInfimum b = o.alpha.empty()
                        ? base_lct_infimum(inst.pair, inst.contraction, static_cast<int>(o.box))
                        : averaged_delta(inst.pair, inst.contraction, parse_rational(o.alpha), o.box);
    Json report = io::to_json(b);
    if (!o.alpha.empty())
        report["alpha"] = io::to_json(parse_rational(o.alpha));
    report["box"] = o.box;
    return {report};
}

Outcome cmd_fiber(const Options& o)
{
    auto inst = io::instance_from_json(input_document(o));
    Json report = io::to_json(general_fiber_and_split(inst.contraction));
    Json mult = Json::array();
    for (const auto& w : inst.contraction.target().rays()) {
        Json comps = Json::array();
        for (const auto& c : fiber_multiplicities_over(inst.contraction, w))
            comps.push_back({{"ray", c.ray}, {"generator", io::to_json(c.generator)},
                             {"multiplicity", c.multiplicity.convert_to<long long>()}});
        mult.push_back({{"direction", io::to_json(w)}, {"components", comps}});
    }
    report["multiplicities"] = mult;
    return {report};
}

Outcome cmd_mfs_check(const Options& o)
{
    auto inst = io::instance_from_json(input_document(o));
    bool fano = is_fano_contraction(inst.pair, inst.contraction);
    bool rank_one = relative_picard_rank_one(inst.pair, inst.contraction);
    std::size_t rel = inst.contraction.relative_dimension();
    return {{{"fano", fano},
             {"relative_picard_rank_one", rank_one},
             {"relative_dimension", rel},
             {"mori_fiber_space", fano && rank_one && rel > 0}}};
}

Outcome cmd_cover(const Options& o)
{
    auto inst = io::instance_from_json(input_document(o));
    return {io::to_json(pr_cover(inst.contraction, inst.pair))};
}

Outcome cmd_quotient(const Options& o)
{
    ToricPair p = io::pair_from_json(input_document(o));
    if (o.sublattice.empty())
        throw ToricError(ErrorKind::Parse, "--sublattice is required");
    Json gens = io::parse_json(o.sublattice);
    std::vector<LatticeVector> columns;
    for (const auto& g : gens)
        columns.push_back(io::vector_from_json(g));
    CoverData c = quotient_by_sublattice(p.fan(), Sublattice::spanned_by(columns, p.fan().rank()));
    ToricPair up = crepant_pullback_pair(p, c);
    Json report = io::to_json(c);
    report["pair"] = io::pair_to_json(up);
    report["sub_pair"] = up.is_sub_pair();
    return {report};
}

Outcome cmd_subdivide(const Options& o)
{
    ToricPair p = io::pair_from_json(input_document(o));
    if (o.vector.empty())
        throw ToricError(ErrorKind::Parse, "--vector is required");
    LatticeVector u = parse_vector(o.vector);
    ToricPair up = crepant_subdivision(p, u);
    Json report = {{"pair", io::pair_to_json(up)},
                   {"exceptional_coefficient", io::to_json(1 - p.a(u))},
                   {"sub_pair", up.is_sub_pair()}};
    if (!o.alpha.empty()) {
        Rational theta = parse_rational(o.alpha);
        BoundaryData avg = average_boundary(up.boundary(), up.fan(), theta);
        report["averaged_boundary"] = io::divisor_to_json(avg.invariant);
        report["averaged_exceptional_coefficient"] = io::to_json(avg.invariant.coeffs.back());
    }
    return {report};
}

Outcome cmd_catalog(const Options& o)
{
    if (o.list) {
        return {{{"fixtures", fixture_names()}, {"families", family_names()}}};
    }
    if (!o.fixture.empty()) {
        Fixture fx = fixture(o.fixture);
        return {fx.contraction ? io::instance_to_json(fx.pair, *fx.contraction) : io::pair_to_json(fx.pair)};
    }
    ExperimentConfig cfg;
    cfg.epsilon = parse_rational(o.epsilon);
    cfg.alpha = o.alpha.empty() ? Rational(1, 2) : parse_rational(o.alpha);
    cfg.box = o.box;
    cfg.family = o.family;
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    cfg.validate();
    return {{{"family", o.family},
             {"epsilon", io::to_json(cfg.epsilon)},
             {"alpha", io::to_json(cfg.alpha)},
             {"multiplicity", io::to_json(run_multiplicity_experiment(cfg))},
             {"delta", io::to_json(run_delta_experiment(cfg))}}};
}

// ---------------------------------------------------------------- text output

std::string scalar_text(const Json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

bool is_table(const Json& v)
{
    if (!v.is_array() || v.empty())
        return false;
    for (const auto& row : v)
        if (!row.is_object())
            return false;
    return true;
}

void render(std::ostream& out, const Json& v, const std::string& indent);

void render_table(std::ostream& out, const Json& rows, const std::string& indent)
{
    std::vector<std::string> keys;
    for (const auto& [k, _] : rows.front().items())
        keys.push_back(k);
    std::vector<std::size_t> width;
    for (const auto& k : keys) {
        std::size_t w = k.size();
        for (const auto& row : rows)
            w = std::max(w, row.contains(k) ? scalar_text(row.at(k)).size() : 0);
        width.push_back(w);
    }
    auto line = [&](auto cell) {
        out << indent;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            std::string s = cell(i);
            out << s << std::string(width[i] - s.size() + (i + 1 < keys.size() ? 2 : 0), ' ');
        }
        out << '\n';
    };
    line([&](std::size_t i) { return keys[i]; });
    for (const auto& row : rows)
        line([&](std::size_t i) { return row.contains(keys[i]) ? scalar_text(row.at(keys[i])) : std::string(); });
}

void render(std::ostream& out, const Json& v, const std::string& indent)
{
    std::size_t width = 0;
    for (const auto& [k, _] : v.items())
        width = std::max(width, k.size());
    for (const auto& [k, value] : v.items()) {
        if (value.is_object()) {
            out << indent << k << '\n';
            render(out, value, indent + "  ");
        } else if (is_table(value)) {
            out << indent << k << '\n';
            render_table(out, value, indent + "  ");
        } else {
            out << indent << k << std::string(width - k.size() + 2, ' ') << scalar_text(value) << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"toricfib: exact invariants of toric pairs and contractions"};
    app.require_subcommand(1);
    Options o;

    using Command = Outcome (*)(const Options&);
    const std::vector<std::tuple<std::string, std::string, Command>> commands = {
        {"validate", "check the fan axioms (and a contraction or boundary if present)", cmd_validate},
        {"classify", "simplicial / smooth / complete flags", cmd_classify},
        {"mld", "toric minimal log discrepancy and epsilon-lc check", cmd_mld},
        {"lct", "lc thresholds over target rays or one --direction", cmd_lct},
        {"adjunction", "discriminant and moduli parts of the canonical bundle formula", cmd_adjunction},
        {"base-inf", "infimum of lct over all directions of the base", cmd_base_inf},
        {"fiber", "general fibre, splitting and fibre multiplicities", cmd_fiber},
        {"mfs-check", "Mori fibre space test", cmd_mfs_check},
        {"cover", "finite cover making the general fibre projective space", cmd_cover},
        {"quotient", "cover defined by a finite-index --sublattice, with crepant pullback", cmd_quotient},
        {"subdivide", "star subdivision at --vector with the crepant boundary", cmd_subdivide},
        {"catalog", "fixtures and the boundedness experiments", cmd_catalog},
    };
    std::map<CLI::App*, Command> handlers;
    for (const auto& [name, help, fn] : commands) {
        CLI::App* sc = app.add_subcommand(name, help);
        sc->add_option("--input", o.input, "input JSON document");
        sc->add_flag("--json", o.json, "emit JSON");
        sc->add_option("--out", o.out, "write output to this file");
        sc->add_option("--epsilon", o.epsilon, "epsilon as p/q");
        sc->add_option("--alpha", o.alpha, "alpha as p/q");
        sc->add_option("--box", o.box, "oracle box radius");
        sc->add_option("--family", o.family, "family name, optionally name:lo-hi");
        sc->add_option("--seed", o.seed, "random seed");
        sc->add_option("--workers", o.workers, "worker threads");
        sc->add_option("--direction", o.direction, "target direction, e.g. 1,1");
        sc->add_option("--vector", o.vector, "lattice vector, e.g. 1,1");
        sc->add_option("--sublattice", o.sublattice, "generators as JSON, e.g. [[1,0],[0,2]]");
        sc->add_option("--fixture", o.fixture, "emit a built-in fixture document");
        sc->add_flag("--list", o.list, "list fixtures and families");
        handlers[sc] = fn;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Outcome outcome{};
        for (auto* sc : app.get_subcommands())
            outcome = handlers.at(sc)(o);
        std::ostringstream text;
        if (o.json)
            text << outcome.result.dump(2) << '\n';
        else
            render(text, outcome.result, "");
        if (o.out.empty()) {
            std::cout << text.str();
        } else {
            std::ofstream file(o.out);
            if (!file || !(file << text.str())) {
                std::cerr << "error: cannot write '" << o.out << "'\n";
                return 2;
            }
        }
        return outcome.code;
    } catch (const ToricError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::Parse ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
