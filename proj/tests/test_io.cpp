#include <doctest.h>

#include <fstream>
#include <limits>
#include <random>

#include "cosenet/error.hpp"
#include "cosenet/io.hpp"
#include "support.hpp"

using namespace cosenet;

TEST_SUITE("io") {

TEST_CASE("matrix text parsing") {
    const Matrix m = parse_matrix_text("# header\n1, 0.5\n\n0.5,1\n");
    CHECK(m.rows() == 2);
    CHECK(m(0, 1) == 0.5);
    CHECK_THROWS_AS(parse_matrix_text("1,0\n0\n"), Error);
    CHECK_THROWS_AS(parse_matrix_text("1,x\nx,1\n"), Error);
    CHECK_THROWS_AS(parse_matrix_text("# nothing\n"), Error);
}

TEST_CASE("doubles format to their shortest exact form") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = unit(rng);
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("matrix and dataset files round-trip") {
    const auto dir = testing::temp_dir("io_roundtrip");
    std::mt19937_64 rng(2);
    const Matrix m = testing::random_symmetric(7, rng);
    write_matrix_file(dir / "m.csv", m);
    CHECK(read_matrix_file(dir / "m.csv") == m);

    SynthSpec spec;
    spec.size = 8;
    spec.noise_mean = 0.01;
    spec.noise_var = 0.3;
    spec.count = 10;
    spec.seed = 3;
    const SynthDataset ds = generate_dataset(spec);
    write_split(dir, Split::Train, ds.train);
    const auto back = read_split(dir, Split::Train);
    REQUIRE(back.size() == ds.train.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].matrix.values() == ds.train[i].matrix.values());
        CHECK(back[i].segmentation == ds.train[i].segmentation);
    }

    write_synth_spec(dir, spec);
    SynthSpec read;
    REQUIRE(read_synth_spec(dir, read));
    CHECK(read.noise_var == spec.noise_var);
    CHECK(read.seed == spec.seed);
    CHECK_FALSE(read_synth_spec(dir / "nowhere", read));
}

TEST_CASE("record format") {
    const SynthRecord rec{validate_matrix(Matrix::Identity(2, 2)), SegmentationVector({1, 1})};
    CHECK(format_record(rec) == "1,0,0,1|1,1");
    CHECK(parse_record("1,0.25,0.25,1|1,0").matrix(0, 1) == 0.25);
    CHECK_THROWS_AS(parse_record("1,0,0,1"), Error);
    CHECK_THROWS_AS(parse_record("1,0,0|1,0"), Error);
    CHECK_THROWS_AS(parse_record("1,0,0,1|1,0.5"), Error);
    CHECK_THROWS_AS(parse_record("1,0.2,0.3,1|1,0"), Error);  // asymmetric
}

TEST_CASE("missing files") {
    const auto dir = testing::temp_dir("io_missing");
    try {
        read_split(dir, Split::Test);
        FAIL("expected IoError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
    CHECK_THROWS_AS(read_matrix_file(dir / "none.csv"), Error);
}

}  // TEST_SUITE
