#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "core/errors.hpp"
#include "core/io.hpp"
#include "core/synth.hpp"

using namespace orka;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("orka_io_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("binary round trip is bit exact") {
    TempDir tmp;
    Matrix m = random_matrix(17, 9, 5);
    // throw in values CSV would mangle at low precision
    m(0, 0) = 1.0 / 3.0;
    m(1, 1) = 1e-308;
    m(2, 2) = -0.0;
    const std::string p = tmp.file("m.bin");
    write_matrix(m, p, FileFormat::kBinary);
    Matrix back = read_matrix(p);
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double a = m.data()[i], b = back.data()[i];
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
}

TEST_CASE("clip round trip keeps the frame shape") {
    TempDir tmp;
    Matrix clip = random_matrix(6 * 4, 5, 8);
    clip.set_frame_shape(6, 4);
    const std::string p = tmp.file("clip.bin");
    write_matrix(clip, p, FileFormat::kBinary);
    Matrix back = read_matrix(p);
    CHECK(back.frame_rows() == 6);
    CHECK(back.frame_cols() == 4);
    CHECK(back.cols() == 5);
    for (std::size_t i = 0; i < clip.size(); ++i)
        CHECK(back.data()[i] == clip.data()[i]);
}

TEST_CASE("csv round trip within 1e-15") {
    TempDir tmp;
    Matrix m = random_matrix(11, 7, 55);
    const std::string p = tmp.file("m.csv");
    write_matrix(m, p, FileFormat::kCsv);
    Matrix back = read_matrix(p);
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    for (std::size_t i = 0; i < m.size(); ++i)
        CHECK(back.data()[i] == doctest::Approx(m.data()[i]).epsilon(1e-15));
}

TEST_CASE("format sniffing") {
    TempDir tmp;
    Matrix m = random_matrix(4, 4, 2);
    write_matrix(m, tmp.file("a.bin"), FileFormat::kBinary);
    write_matrix(m, tmp.file("b.csv"), FileFormat::kCsv);
    // auto-detect by magic, regardless of requested format or extension
    CHECK(read_matrix(tmp.file("a.bin")).rows() == 4);
    CHECK(read_matrix(tmp.file("b.csv")).rows() == 4);
}

TEST_CASE("malformed input is rejected") {
    TempDir tmp;
    CHECK_THROWS_AS(read_matrix(tmp.file("missing.csv")), IoError);

    std::ofstream(tmp.file("ragged.csv")) << "1,2,3\n4,5\n";
    CHECK_THROWS_AS(read_matrix(tmp.file("ragged.csv")), IoError);

    std::ofstream(tmp.file("junk.csv")) << "1,banana\n";
    CHECK_THROWS_AS(read_matrix(tmp.file("junk.csv")), IoError);

    // plausible magic with absurd dims must be refused before allocation
    std::ofstream bad(tmp.file("huge.bin"), std::ios::binary);
    bad.write("ORKA\1", 5);
    const std::uint64_t ndims = 2, d0 = ~0ull, d1 = ~0ull;
    bad.write(reinterpret_cast<const char*>(&ndims), 8);
    bad.write(reinterpret_cast<const char*>(&d0), 8);
    bad.write(reinterpret_cast<const char*>(&d1), 8);
    bad.close();
    CHECK_THROWS_AS(read_matrix(tmp.file("huge.bin")), IoError);

    std::ofstream(tmp.file("trunc.bin"), std::ios::binary) << "ORKA";
    CHECK_THROWS_AS(read_matrix(tmp.file("trunc.bin")), IoError);
}

TEST_CASE("writes are atomic") {
    TempDir tmp;
    Matrix m = random_matrix(3, 3, 1);
    write_matrix(m, tmp.file("out.csv"));
    CHECK_FALSE(fs::exists(tmp.file("out.csv.tmp")));
    CHECK(fs::exists(tmp.file("out.csv")));
}

TEST_CASE("shift vector csv round trip") {
    TempDir tmp;
    ShiftVector lam;
    lam.dims = 2;
    lam.x = {0, 1, -2, 3};
    lam.y = {0, -1, -1, 5};
    write_shifts_csv(lam, tmp.file("lam.csv"));
    ShiftVector back = read_shifts_csv(tmp.file("lam.csv"), 2);
    CHECK(back.x == lam.x);
    CHECK(back.y == lam.y);

    ShiftVector one;
    one.x = {4, 5, 6};
    write_shifts_csv(one, tmp.file("one.csv"));
    CHECK(read_shifts_csv(tmp.file("one.csv"), 1).x == one.x);
}

TEST_CASE("pgm import and frame directories") {
    TempDir tmp;
    // 4x3 gradient with a comment line in the header
    std::ofstream pgm(tmp.file("f0.pgm"), std::ios::binary);
    pgm << "P5\n# test frame\n4 3\n255\n";
    for (int i = 0; i < 12; ++i) pgm.put(static_cast<char>(i * 20));
    pgm.close();

    Matrix frame = read_pgm(tmp.file("f0.pgm"));
    CHECK(frame.frame_rows() == 4);
    CHECK(frame.frame_cols() == 3);
    CHECK(frame.cols() == 1);
    CHECK(frame.data()[0] == doctest::Approx(0.0));
    // pixel (x=1, y=0) is the second byte of the first image row
    CHECK(frame.data()[1] == doctest::Approx(20.0 / 255.0));

    std::ofstream pgm2(tmp.file("f1.pgm"), std::ios::binary);
    pgm2 << "P5\n4 3\n255\n";
    for (int i = 0; i < 12; ++i) pgm2.put(static_cast<char>(255 - i));
    pgm2.close();

    Matrix clip = read_frame_dir(tmp.path.string());
    CHECK(clip.cols() == 2);
    CHECK(clip.frame_rows() == 4);
    CHECK(clip.frame_cols() == 3);
    CHECK(clip(0, 1) == doctest::Approx(1.0));
}
