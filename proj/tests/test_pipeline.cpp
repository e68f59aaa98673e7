#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "thuefib/pipeline.hpp"

using namespace thuefib;
using namespace thuefib::pipe;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("restricted run solves and round-trips") {
    Config cfg;
    cfg.max_n = 12;
    cfg.jobs = 2;
    Certificate cert = run_all(cfg);
    CHECK(cert.partial);
    REQUIRE(cert.solved.size() == 12);
    CHECK(cert.solved[0].set.contains(2, 1));
    CHECK(cert.solved[0].set.contains(7, 4));
    CHECK(cert.solved[2].set.contains(38, 273));
    for (auto& se : cert.solved) {
        if (se.n != 1 && se.n != 3) CHECK(se.set.solutions.size() == 8);
        CHECK((se.n < 10 ? se.provenance == "oracle-verified"
                         : se.provenance == "reduction-certified"));
    }

    VerifyReport rep = verify(cert);
    CHECK(rep.ok);

    write_certificate(cert, "cert_test.json");
    Certificate back = read_certificate("cert_test.json");
    CHECK(verify(back).ok);
    CHECK(to_json(back).dump(1) == to_json(cert).dump(1));
}

TEST_CASE("byte-identical reruns") {
    Config cfg;
    cfg.max_n = 10;
    cfg.jobs = 2;
    write_certificate(run_all(cfg), "cert_a.json");
    cfg.jobs = 1;  // worker count must not leak into the output
    Certificate c2 = run_all(cfg);
    c2.config.jobs = 2;  // align the recorded config
    write_certificate(c2, "cert_b.json");
    CHECK(slurp("cert_a.json") == slurp("cert_b.json"));
}

TEST_CASE("verification catches tampering") {
    Config cfg;
    cfg.max_n = 6;
    Certificate cert = run_all(cfg);
    REQUIRE(!cert.solved.empty());
    cert.solved[4].set.solutions[0].x += 1;
    VerifyReport rep = verify(cert);
    CHECK(!rep.ok);
    CHECK(!rep.errors.empty());
}

TEST_CASE("max-n beyond the direct range is rejected") {
    Config cfg;
    cfg.max_n = 77;
    CHECK_THROWS_AS(run_all(cfg), std::invalid_argument);
}
