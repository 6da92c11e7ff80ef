#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "acctraj/errors.hpp"
#include "acctraj/ingest.hpp"

using namespace acctraj;

namespace {

SchemaMapping two_vehicle_schema() {
    std::istringstream in(
        "platoon_id = p1\n"
        "vehicle.count = 2\n"
        "vehicle.1.id = lead\n"
        "vehicle.1.model = ICEV\n"
        "vehicle.1.mode = Human\n"
        "vehicle.2.id = follow\n"
        "vehicle.2.model = EV\n"
        "vehicle.2.mode = ACC\n");
    return SchemaMapping::parse(in, "test.conf");
}

PropulsionTable empty_table() { return {}; }

}  // namespace

TEST_CASE("schema mapping parse and defaults") {
    auto schema = two_vehicle_schema();
    CHECK(schema.platoon_id == "p1");
    CHECK(schema.time_col == "Time");
    CHECK(schema.delimiter == ',');
    REQUIRE(schema.vehicles.size() == 2);
    CHECK(schema.vehicles[0].speed_col == "Speed1");
    CHECK(schema.vehicles[1].speed_col == "Speed2");
    CHECK(schema.vehicles[1].ivs_col == "IVS2");
    CHECK(schema.vehicles[1].mode == "ACC");
}

TEST_CASE("schema mapping rejects unknown keys") {
    std::istringstream in("platoon_id = p\nvehicle.count = 1\nbogus = 1\n");
    CHECK_THROWS_AS(SchemaMapping::parse(in, "bad.conf"), ConfigError);
}

TEST_CASE("propulsion table classify with model-name fallback") {
    PropulsionTable table;
    table.set("Model 3", Propulsion::EV);
    CHECK(table.classify("Model 3") == Propulsion::EV);
    CHECK(table.classify("EV") == Propulsion::EV);       // direct name fallback
    CHECK(table.classify("ICEV") == Propulsion::ICEV);
    CHECK(table.classify("unknown-model") == Propulsion::Other);
}

TEST_CASE("parse a minimal two-vehicle platoon") {
    std::istringstream in(
        "Time,Speed1,Speed2,IVS2\n"
        "0.0,10.0,9.5,12.0\n"
        "0.1,10.1,9.6,12.1\n"
        "0.2,10.2,9.7,12.2\n");
    auto result = parse_trajectory_stream(in, "mini.csv", two_vehicle_schema(),
                                          empty_table());
    const auto& p = result.platoon;
    CHECK(p.platoon_id == "p1");
    REQUIRE(p.vehicles.size() == 2);
    CHECK(p.vehicles[0].meta.propulsion == Propulsion::ICEV);
    CHECK(p.vehicles[1].meta.propulsion == Propulsion::EV);
    CHECK(p.vehicles[1].meta.driving_mode == DrivingMode::ACC);
    REQUIRE(p.vehicles[0].samples.size() == 3);
    CHECK(p.vehicles[0].samples[1].u == 10.1);
    CHECK_FALSE(p.vehicles[0].samples[0].ivs.has_value());
    REQUIRE(p.vehicles[1].samples[2].ivs.has_value());
    CHECK(*p.vehicles[1].samples[2].ivs == 12.2);
}

TEST_CASE("parse errors carry line numbers") {
    SUBCASE("non-numeric field") {
        std::istringstream in(
            "Time,Speed1,Speed2,IVS2\n"
            "0.0,10.0,9.5,12.0\n"
            "0.1,abc,9.6,12.1\n");
        try {
            parse_trajectory_stream(in, "bad.csv", two_vehicle_schema(), empty_table());
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("non-monotone timestamps") {
        std::istringstream in(
            "Time,Speed1,Speed2,IVS2\n"
            "0.1,10.0,9.5,12.0\n"
            "0.0,10.1,9.6,12.1\n");
        CHECK_THROWS_AS(parse_trajectory_stream(in, "bad.csv", two_vehicle_schema(),
                                                empty_table()),
                        DataError);
    }
    SUBCASE("negative speed") {
        std::istringstream in(
            "Time,Speed1,Speed2,IVS2\n"
            "0.0,-1.0,9.5,12.0\n");
        CHECK_THROWS_AS(parse_trajectory_stream(in, "bad.csv", two_vehicle_schema(),
                                                empty_table()),
                        DataError);
    }
    SUBCASE("non-positive spacing") {
        std::istringstream in(
            "Time,Speed1,Speed2,IVS2\n"
            "0.0,10.0,9.5,0.0\n");
        CHECK_THROWS_AS(parse_trajectory_stream(in, "bad.csv", two_vehicle_schema(),
                                                empty_table()),
                        DataError);
    }
    SUBCASE("missing mapped column") {
        std::istringstream in("Time,Speed1,Speed2\n0.0,10.0,9.5\n");
        CHECK_THROWS_AS(parse_trajectory_stream(in, "bad.csv", two_vehicle_schema(),
                                                empty_table()),
                        DataError);
    }
}

TEST_CASE("parse warns on unexpected sampling interval") {
    std::ostringstream text;
    text << "Time,Speed1,Speed2,IVS2\n";
    for (int k = 0; k < 20; ++k)
        text << 0.2 * k << ",10.0,9.5,12.0\n";
    std::istringstream in(text.str());
    auto result = parse_trajectory_stream(in, "slow.csv", two_vehicle_schema(),
                                          empty_table());
    bool found = false;
    for (const auto& w : result.warnings)
        if (w.message.find("interval") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("parse warns on unknown propulsion") {
    std::istringstream conf(
        "platoon_id = p\n"
        "vehicle.count = 1\n"
        "vehicle.1.id = lead\n"
        "vehicle.1.model = mystery\n"
        "vehicle.1.mode = Human\n");
    auto schema = SchemaMapping::parse(conf, "c");
    std::istringstream in("Time,Speed1\n0.0,10.0\n0.1,10.0\n");
    auto result = parse_trajectory_stream(in, "f.csv", schema, empty_table());
    CHECK_FALSE(result.warnings.empty());
    CHECK(result.platoon.vehicles[0].meta.propulsion == Propulsion::Other);
}

TEST_CASE("repair_gaps") {
    auto sample = [](double t, double u) {
        RawSample s;
        s.t = t;
        s.u = u;
        s.ivs = 10.0;
        return s;
    };

    SUBCASE("clean series passes through as one segment") {
        RawSeries series;
        for (int k = 0; k < 10; ++k) series.push_back(sample(0.1 * k, 5.0));
        auto segments = repair_gaps(series);
        REQUIRE(segments.size() == 1);
        CHECK(segments[0].size() == 10);
    }
    SUBCASE("short gap is interpolated onto the grid") {
        RawSeries series = {sample(0.0, 10.0), sample(0.1, 10.0), sample(0.4, 13.0),
                            sample(0.5, 13.0)};
        auto segments = repair_gaps(series, 0.5);
        REQUIRE(segments.size() == 1);
        REQUIRE(segments[0].size() == 6);
        CHECK(segments[0][2].t == doctest::Approx(0.2));
        CHECK(segments[0][2].u == doctest::Approx(11.0));
        CHECK(segments[0][3].u == doctest::Approx(12.0));
        REQUIRE(segments[0][2].ivs.has_value());
        CHECK(*segments[0][2].ivs == doctest::Approx(10.0));
    }
    SUBCASE("long gap splits the series") {
        RawSeries series = {sample(0.0, 10.0), sample(0.1, 10.0), sample(2.0, 12.0),
                            sample(2.1, 12.0)};
        auto segments = repair_gaps(series, 0.5);
        REQUIRE(segments.size() == 2);
        CHECK(segments[0].size() == 2);
        CHECK(segments[1].front().t == doctest::Approx(2.0));
    }
}

namespace {

Platoon synthetic_platoon(std::size_t n_vehicles, std::size_t steps,
                          double follower_offset = 0.0) {
    Platoon p;
    p.platoon_id = "syn";
    for (std::size_t i = 0; i < n_vehicles; ++i) {
        PlatoonVehicle v;
        v.meta.vehicle_id = "v" + std::to_string(i + 1);
        v.meta.propulsion = i % 2 == 0 ? Propulsion::EV : Propulsion::ICEV;
        v.meta.driving_mode = i == 0 ? DrivingMode::Human : DrivingMode::ACC;
        for (std::size_t k = 0; k < steps; ++k) {
            RawSample s;
            s.t = 0.1 * static_cast<double>(k) + (i > 0 ? follower_offset : 0.0);
            s.u = 15.0 + static_cast<double>(i);
            if (i > 0) s.ivs = 20.0;
            v.samples.push_back(s);
        }
        p.vehicles.push_back(v);
    }
    return p;
}

}  // namespace

TEST_CASE("decompose_platoon yields n-1 consecutive pairs") {
    for (std::size_t n : {2u, 3u, 5u}) {
        auto pairs = decompose_platoon(synthetic_platoon(n, 600));
        CHECK(pairs.size() == n - 1);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            CHECK(pairs[i].leader.meta.vehicle_id == "v" + std::to_string(i + 1));
            CHECK(pairs[i].follower.meta.vehicle_id == "v" + std::to_string(i + 2));
            CHECK(pairs[i].leader.size() == pairs[i].follower.size());
            CHECK(pairs[i].follower.s.size() == pairs[i].follower.size());
        }
    }
}

TEST_CASE("decompose_platoon clips each pair to the common window") {
    // Followers start 5 s later than the leader.
    auto p = synthetic_platoon(2, 600, 5.0);
    auto pairs = decompose_platoon(p);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].leader.t.front() == doctest::Approx(5.0));
    REQUIRE(pairs[0].leader.size() == pairs[0].follower.size());
    for (std::size_t k = 0; k < pairs[0].leader.size(); ++k)
        CHECK(pairs[0].leader.t[k] == doctest::Approx(pairs[0].follower.t[k]));
}

TEST_CASE("decompose_platoon degenerate platoons") {
    CHECK(decompose_platoon(synthetic_platoon(1, 100)).empty());
    CHECK_THROWS_AS(decompose_platoon(Platoon{}), DataError);
}

TEST_CASE("filter_pairs keeps acc ev/icev followers with enough overlap") {
    auto pairs = decompose_platoon(synthetic_platoon(4, 600));  // 60 s
    SUBCASE("all pass by default") { CHECK(filter_pairs(pairs).size() == 3); }
    SUBCASE("human-driven follower is dropped") {
        pairs[1].follower.meta.driving_mode = DrivingMode::Human;
        CHECK(filter_pairs(pairs).size() == 2);
    }
    SUBCASE("hybrid follower is dropped") {
        pairs[0].follower.meta.propulsion = Propulsion::Hybrid;
        CHECK(filter_pairs(pairs).size() == 2);
    }
    SUBCASE("short overlap is dropped") {
        FilterOptions opts;
        opts.min_overlap_s = 120.0;
        CHECK(filter_pairs(pairs, opts).empty());
    }
}

TEST_CASE("infer_schema from header columns") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "acctraj_ingest_test";
    fs::create_directories(dir);
    auto path = dir / "infer.csv";
    {
        std::ofstream out(path);
        out << "Time,Speed1,Speed2,IVS2,Speed3,IVS3\n0.0,1.0,1.0,5.0,1.0,5.0\n";
    }
    auto schema = infer_schema(path);
    CHECK(schema.vehicles.size() == 3);
    CHECK(schema.vehicles[2].speed_col == "Speed3");
    fs::remove_all(dir);
}
