#include <doctest.h>

#include <set>
#include <sstream>

#include "rfblt/csv.hpp"
#include "rfblt/rng.hpp"
#include "test_support.hpp"

using namespace rfblt;
using rfblt::testing::error_code;

TEST_CASE("series csv roundtrip is exact") {
  const auto s = series::TimeSeries({0.0, 0.1, 2.0 / 3.0}, {1e-300, -0.30000000000000004, 12345.678});
  std::ostringstream out;
  csv::write_series(out, s);
  std::istringstream in(out.str());
  const auto back = csv::parse_series(in);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back.time(i) == s.time(i));
    CHECK(back.value(i) == s.value(i));
  }
}

TEST_CASE("series csv rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return csv::parse_series(in);
  };
  CHECK(parse("\xEF\xBB\xBFtime,value\n0,1\n1,2\n").size() == 2);
  CHECK(parse("time,value\r\n0,1\r\n1,2\r\n").value(1) == 2.0);
  CHECK(error_code([&] { parse("t,v\n0,1\n1,2\n"); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([&] { parse("time,value\n1,1\n0,2\n"); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([&] { parse("time,value\n0,1\n1,2x\n"); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([&] { parse("time,value\n0,1,3\n1,2\n"); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([&] { parse(""); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { csv::read_series("/nonexistent/file.csv"); }) == ErrorCode::IoError);
}

TEST_CASE("number formatting is shortest roundtrip") {
  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::format_double(2.0) == "2");
  CHECK(csv::parse_double(csv::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("table roundtrip") {
  csv::Table t{{"a", "b"}, {{1.5, 2}, {-3, 4e-12}}};
  std::ostringstream out;
  csv::write_table(out, t);
  std::istringstream in(out.str());
  const auto back = csv::read_table(in);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
}

TEST_CASE("rng streams are reproducible and independent") {
  RngStream a(42), b(42), c(43);
  std::vector<std::uint64_t> xa, xb, xc;
  for (int i = 0; i < 16; ++i) {
    xa.push_back(a());
    xb.push_back(b());
    xc.push_back(c());
  }
  CHECK(xa == xb);
  CHECK(xa != xc);

  const RngStream root(7);
  CHECK(root.child(1).key() == root.child(1).key());
  CHECK(root.child(1).key() != root.child(2).key());
  CHECK(root.child({1, 2}).key() == root.child(1).child(2).key());
  std::set<std::uint64_t> keys;
  for (std::uint64_t i = 0; i < 1000; ++i) keys.insert(root.child(i).key());
  CHECK(keys.size() == 1000);

  RngStream u(3);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    sum += x;
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("child derivation does not advance the parent") {
  RngStream a(5);
  RngStream b(5);
  (void)a.child(9);
  CHECK(a() == b());
  CHECK(a.position() == 1);
}

TEST_CASE("error codes classify validation versus runtime") {
  CHECK(Error(ErrorCode::InvalidArgument, "x").is_validation());
  CHECK(Error(ErrorCode::EmptyPlan, "x").is_validation());
  CHECK_FALSE(Error(ErrorCode::SingularPrecision, "x").is_validation());
  CHECK_FALSE(Error(ErrorCode::IoError, "x").is_validation());
  CHECK(std::string(Error(ErrorCode::ShapeError, "bad").what()) == "ShapeError: bad");
}
