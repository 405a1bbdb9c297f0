#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include "helpers.hpp"
#include "voltspec/io.hpp"

using namespace voltspec;
using namespace voltspec::testing;

TEST_CASE("finite kernel config") {
    const auto cfg = parse_kernel_json(R"({"type":"finite","terms":[[1.0,2.0],[0.5,3.5]]})");
    REQUIRE(cfg.kernel.size() == 2);
    CHECK(cfg.kernel.terms[0].amplitude == 1.0);
    CHECK(cfg.kernel.terms[1].rate == 3.5);
    CHECK_FALSE(cfg.family.has_value());
    CHECK(cfg.kernel.tail_l1 == 0.0);
}

TEST_CASE("power-law kernel config") {
    const auto cfg = parse_kernel_json(
        R"({"type":"power_law","A":1.0,"B":1.0,"alpha":0.5,"beta":2.0,"N":3})");
    REQUIRE(cfg.family.has_value());
    CHECK(cfg.family->r() == doctest::Approx(0.75));
    CHECK(cfg.kernel.size() == 3);
    CHECK(cfg.kernel.tail_l1 > 0.0);
}

TEST_CASE("malformed configs raise ValidationError") {
    CHECK_THROWS_AS(parse_kernel_json("not json"), ValidationError);
    CHECK_THROWS_AS(parse_kernel_json(R"({"type":"other"})"), ValidationError);
    CHECK_THROWS_AS(parse_kernel_json(R"({"type":"finite"})"), ValidationError);
    CHECK_THROWS_AS(parse_kernel_json(R"({"type":"finite","terms":[[1.0]]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_kernel_json(R"({"type":"finite","terms":[[1.0,-2.0]]})"),
                    ValidationError);
    CHECK_THROWS_AS(load_kernel("/nonexistent/path.json"), ValidationError);
}

TEST_CASE("inline vs file detection") {
    const auto inline_cfg = load_kernel(R"({"type":"finite","terms":[[1.0,2.0]]})");
    CHECK(inline_cfg.kernel.size() == 1);

    const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                             "/voltspec_io_test_kernel.json";
    {
        std::ofstream out(path);
        out << R"({"type":"finite","terms":[[2.0,4.0]]})";
    }
    const auto file_cfg = load_kernel(path);
    CHECK(file_cfg.kernel.terms[0].rate == 4.0);
    std::remove(path.c_str());
}

TEST_CASE("format_double round-trips binary64") {
    for (double x : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.69562076955986206}) {
        const std::string s = format_double(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(format_double(1.0) == "1");
}
