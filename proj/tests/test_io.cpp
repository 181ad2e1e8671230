#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "acmdm/error.hpp"
#include "acmdm/io.hpp"

using namespace acmdm;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected acmdm::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("parse_charges") {
    const auto cfg = parse_charges(R"({"charges": [{"x": 1, "y": -2.5, "lambda": 3}, {"x": 0, "y": 0, "lambda": -1e-3}]})");
    REQUIRE(cfg.size() == 2);
    CHECK(cfg.charges()[0].position == Vec2{1.0, -2.5});
    CHECK(cfg.charges()[0].lambda == 3.0);
    CHECK(cfg.charges()[1].lambda == -1e-3);
    CHECK(parse_charges(R"({"charges": []})").empty());

    CHECK(code_of([] { parse_charges("{\"charges\": [") ; }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_charges(R"({"charge": []})"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_charges(R"({"charges": [{"x": 1, "y": 2}]})"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_charges(R"({"charges": [{"x": "1", "y": 2, "lambda": 1}]})"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_charges(R"({"charges": [{"x": 1, "y": 2, "lambda": 1}, {"x": 1, "y": 2, "lambda": 2}]})"); }) ==
          ErrorCode::Parse);
}

TEST_CASE("parse_path") {
    const auto p = parse_path(R"({"closed": true, "vertices": [[1, 0], [0, 1], [-1, 0]]})");
    CHECK(p.closed());
    CHECK(p.vertices().size() == 3);
    CHECK(p.vertices()[1] == Vec2{0.0, 1.0});

    CHECK(code_of([] { parse_path(R"({"vertices": [[1, 0], [0, 1]]})"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_path(R"({"closed": "yes", "vertices": [[1, 0], [0, 1]]})"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_path(R"({"closed": false, "vertices": [[1, 0, 2], [0, 1]]})"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_path(R"({"closed": true, "vertices": [[1, 0], [0, 1]]})"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_path("not json"); }) == ErrorCode::Parse);
}

TEST_CASE("load from files") {
    const auto dir = std::filesystem::temp_directory_path() / "acmdm_io_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "c.json") << R"({"charges": [{"x": 0, "y": 0, "lambda": 2}]})";
        std::ofstream(dir / "p.json") << R"({"closed": false, "vertices": [[0, 1], [1, 1]]})";
    }
    CHECK(load_charges(dir / "c.json").size() == 1);
    CHECK_FALSE(load_path(dir / "p.json").closed());
    CHECK(code_of([&] { load_charges(dir / "missing.json"); }) == ErrorCode::Parse);
    std::filesystem::remove_all(dir);
}
