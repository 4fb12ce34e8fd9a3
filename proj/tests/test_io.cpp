#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "toric/catalog.hpp"
#include "toric/io.hpp"

using namespace toric;
using toric::io::Json;

namespace {

ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const ToricError& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::ZeroVector;
}

void check_round_trip(const ToricPair& p, const ToricContraction& f)
{
    Json doc = io::instance_to_json(p, f);
    std::string text = doc.dump();
    auto back = io::instance_from_json(io::parse_json(text));
    CHECK(back.pair.fan() == p.fan());
    CHECK(back.pair.boundary() == p.boundary());
    CHECK(back.contraction.target() == f.target());
    CHECK(back.contraction.pi() == f.pi());
    CHECK(io::instance_to_json(back.pair, back.contraction).dump() == text);
}

}  // namespace

TEST_CASE("scalars and vectors")
{
    CHECK(io::to_json(Rational(-3, 4)) == "-3/4");
    CHECK(io::to_json(Rational(2)) == "2");
    CHECK(io::rational_from_json(Json("6/8")) == Rational(3, 4));
    CHECK(io::rational_from_json(Json(5)) == 5);
    CHECK(io::vector_from_json(Json::parse("[1, -2, \"3\"]")) == LatticeVector{1, -2, 3});

    Integer big("123456789012345678901234567890");
    LatticeVector v(std::vector<Integer>{big, -big});
    CHECK(io::vector_from_json(io::to_json(v)) == v);

    IntegerMatrix m{{1, 2, 3}, {4, 5, 6}};
    CHECK(io::matrix_from_json(io::to_json(m)) == m);
}

TEST_CASE("every fixture and generated instance round-trips exactly")
{
    int count = 0;
    for (const auto& name : fixture_names()) {
        Fixture fx = fixture(name);
        Json doc = io::pair_to_json(fx.pair);
        ToricPair back = io::pair_from_json(io::parse_json(doc.dump()));
        CHECK(back.fan() == fx.pair.fan());
        CHECK(back.boundary() == fx.pair.boundary());
        CHECK(io::pair_to_json(back).dump() == doc.dump());
        if (fx.contraction)
            check_round_trip(fx.pair, *fx.contraction);
        ++count;
    }
    for (const char* family : {"suite", "terminal3"})
        for (const auto& inst : generate_family(parse_family(family))) {
            check_round_trip(inst.pair, inst.contraction);
            ++count;
        }
    FamilySpec random = parse_family("random", 11);
    random.count = 25;
    for (const auto& inst : generate_family(random)) {
        check_round_trip(inst.pair, inst.contraction);
        ++count;
    }
    CHECK(count > 80);
}

TEST_CASE("generic members survive a round trip")
{
    Fixture fx = fixture("X2->P1");
    REQUIRE(fx.pair.has_generic_members());
    ToricPair back = io::pair_from_json(io::pair_to_json(fx.pair));
    REQUIRE(back.boundary().generic.size() == fx.pair.boundary().generic.size());
    CHECK(back.boundary().generic[0].b == fx.pair.boundary().generic[0].b);
    CHECK(back.boundary().generic[0].divisor_class == fx.pair.boundary().generic[0].divisor_class);
}

TEST_CASE("a bare fan document is the pair with empty boundary")
{
    Json doc = io::fan_to_json(projective_space_fan(2));
    ToricPair p = io::pair_from_json(doc);
    CHECK(p.boundary().invariant.coeffs == RationalVector{0, 0, 0});
    CHECK(!p.has_generic_members());

    Json pair = {{"fan", doc}};
    CHECK(io::pair_from_json(pair).boundary().invariant.coeffs == RationalVector{0, 0, 0});
}

TEST_CASE("contraction documents")
{
    Fixture fx = fixture("F1->pt");
    REQUIRE(fx.contraction);
    Json doc = io::contraction_to_json(*fx.contraction);
    CHECK(doc.at("pi") == Json::array());
    auto loaded = io::instance_from_json(doc);
    CHECK(loaded.contraction.pi().rows() == 0);
    CHECK(loaded.contraction.pi().cols() == 2);
    CHECK(loaded.pair.boundary().invariant.coeffs == RationalVector{0, 0, 0, 0});

    Json no_source = doc;
    no_source.erase("source");
    CHECK(kind_of([&] { io::contraction_from_json(no_source); }) == ErrorKind::Parse);
    CHECK_NOTHROW(io::contraction_from_json(no_source, fx.pair.fan()));

    Json wrong = io::contraction_to_json(*fixture("X2->P1").contraction);
    wrong["pi"] = Json::parse("[[1, 1]]");
    CHECK(kind_of([&] { io::contraction_from_json(wrong); }) == ErrorKind::ConeNotMapped);
}

TEST_CASE("malformed documents raise parse errors")
{
    Json fan = io::fan_to_json(projective_space_fan(2));
    CHECK(kind_of([] { io::parse_json("{\"rank\": 2, "); }) == ErrorKind::Parse);
    CHECK(kind_of([] { io::rational_from_json(Json("1/0")); }) == ErrorKind::Parse);
    CHECK(kind_of([] { io::rational_from_json(Json("x")); }) == ErrorKind::Parse);
    CHECK(kind_of([] { io::rational_from_json(Json(0.5)); }) == ErrorKind::Parse);
    CHECK(kind_of([] { io::vector_from_json(Json::parse("[1, 2.5]")); }) == ErrorKind::Parse);
    CHECK(kind_of([] { io::matrix_from_json(Json::parse("[[1, 2], [3]]")); }) == ErrorKind::Parse);

    Json missing = fan;
    missing.erase("rays");
    CHECK(kind_of([&] { io::fan_from_json(missing); }) == ErrorKind::Parse);

    Json short_ray = fan;
    short_ray["rays"][0] = Json::parse("[1]");
    CHECK(kind_of([&] { io::fan_from_json(short_ray); }) == ErrorKind::Parse);

    Json negative = fan;
    negative["max_cones"][0][0] = -1;
    CHECK(kind_of([&] { io::fan_from_json(negative); }) == ErrorKind::Parse);

    Json pair = {{"fan", fan}, {"boundary", {{"coeffs", {{"7", "1/2"}}}}}};
    CHECK(kind_of([&] { io::pair_from_json(pair); }) == ErrorKind::Parse);
    pair["boundary"]["coeffs"] = {{"zero", "1/2"}};
    CHECK(kind_of([&] { io::pair_from_json(pair); }) == ErrorKind::Parse);
    pair["boundary"]["coeffs"] = {{"1", "3/2"}};
    CHECK(kind_of([&] { io::pair_from_json(pair); }) == ErrorKind::CoefficientOutOfRange);

    CHECK(kind_of([] { io::instance_from_json(Json::object()); }) == ErrorKind::Parse);
    CHECK(kind_of([] { io::read_json_file("/nonexistent/file.json"); }) == ErrorKind::Parse);
}

TEST_CASE("invalid fans are rejected when a pair is loaded")
{
    Json broken = {{"rank", 2}, {"rays", {{1, 0}, {0, 1}, {1, 1}}}, {"max_cones", {{0, 1}, {0, 2}}}};
    CHECK_NOTHROW(io::fan_from_json(broken));
    CHECK(kind_of([&] { io::pair_from_json(broken); }) == ErrorKind::InvalidFan);
}

TEST_CASE("reading from a file")
{
    std::string path = "test_io_tmp.json";
    {
        std::ofstream out(path);
        out << io::pair_to_json(fixture("P112").pair).dump(2);
    }
    ToricPair p = io::pair_from_json(io::read_json_file(path));
    CHECK(p.fan() == fixture("P112").pair.fan());
    std::remove(path.c_str());
}

TEST_CASE("report documents")
{
    Fixture fx = fixture("X2->P1");
    Json adj = io::to_json(discriminant_divisor(fx.pair, *fx.contraction));
    CHECK(adj.at("discriminant") == Json::parse("[\"1/2\", \"0\"]"));
    CHECK(adj.at("moduli_degree") == "3/2");

    Json v = io::to_json(validate_fan(Fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {0, 2}})));
    CHECK(v.at("valid") == false);
    CHECK(v.at("cones") == Json::parse("[0, 1]"));

    Json mld = io::to_json(mld_and_eps_check(fixture("P112").pair, 1));
    CHECK(mld.at("mld_toric") == "1");
    CHECK(mld.at("eps_lc") == true);
}
