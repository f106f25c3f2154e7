#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "symratio/error.hpp"
#include "symratio/io.hpp"
#include "symratio/ranktwo.hpp"

using namespace symratio;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no symratio::Error thrown";
  return ErrorKind::invalid_argument;
}

std::string message_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Json, SymTensorRoundTrip) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 3; ++n) {
    std::vector<double> c(MonomialBasis(n, 4).size());
    for (double& x : c) x = std::normal_distribution<double>()(rng);
    c[1] = 0.0;
    const SymTensor a(n, 4, c);
    const SymTensor b = symtensor_from_json(Json::parse(to_json(a).dump()));
    ASSERT_EQ(b.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(b.coeff(i), a.coeff(i));
  }
}

TEST(Json, ZeroCoefficientsAreOmitted) {
  const Json j = to_json(make_w(3));
  EXPECT_EQ(j["coeffs"].size(), 1u);
  EXPECT_EQ(j["coeffs"][0]["exp"], Json::parse("[2, 1]"));
  const SymTensor a = symtensor_from_json(Json::parse(R"({"order": 2, "dim": 2, "coeffs": []})"));
  EXPECT_TRUE(a.is_zero());
}

TEST(Json, DenseRoundTrip) {
  DenseTensor t(std::vector<int>{2, 3, 2});
  for (std::size_t i = 0; i < t.size(); ++i) t.entries()[i] = 0.1 * static_cast<double>(i) - 0.5;
  const DenseTensor u = dense_from_json(Json::parse(to_json(t).dump()));
  EXPECT_EQ(u.dims(), t.dims());
  EXPECT_EQ(u.entries(), t.entries());
}

TEST(Json, SchemaErrorsCarryLocation) {
  const auto bad_sum = Json::parse(R"({"order": 3, "dim": 2, "coeffs": [{"exp": [1, 1], "value": 1}]})");
  EXPECT_EQ(kind_of([&] { symtensor_from_json(bad_sum); }), ErrorKind::parse_error);
  EXPECT_NE(message_of([&] { symtensor_from_json(bad_sum); }).find("/coeffs/0/exp"), std::string::npos);

  const auto bad_value = Json::parse(R"({"order": 1, "dim": 2, "coeffs": [{"exp": [1, 0], "value": "x"}]})");
  EXPECT_NE(message_of([&] { symtensor_from_json(bad_value); }).find("/coeffs/0/value"), std::string::npos);

  const auto missing = Json::parse(R"({"dim": 2, "coeffs": []})");
  EXPECT_NE(message_of([&] { symtensor_from_json(missing); }).find("order"), std::string::npos);

  const auto short_dense = Json::parse(R"({"dims": [2, 2], "entries": [1, 2, 3]})");
  EXPECT_NE(message_of([&] { dense_from_json(short_dense); }).find("/entries"), std::string::npos);
}

TEST(Json, MaximizerSetFields) {
  MaximizerSet m;
  m.value = 2.0;
  Vector p(2);
  p << 1.0, 0.0;
  m.points.push_back(p);
  m.is_exact = true;
  const Json j = to_json(m);
  EXPECT_EQ(j["value"], 2.0);
  EXPECT_EQ(j["points"][0][0], 1.0);
  EXPECT_EQ(j["is_exact"], true);
}

TEST(Builtins, WdAndRankTwoAndBorder) {
  Input in{SymTensor(2, 1), ""};
  ASSERT_TRUE(parse_builtin("wd:5", in));
  EXPECT_EQ(std::get<SymTensor>(in.tensor).order(), 5);
  EXPECT_EQ(in.descriptor, "wd:5");

  ASSERT_TRUE(parse_builtin("ranktwo:2,1,0.5,4", in));
  const SymTensor expected = make_rank_two_planar(2.0, 1.0, std::acos(0.5), 4);
  const SymTensor& got = std::get<SymTensor>(in.tensor);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got.coeff(i), expected.coeff(i));

  ASSERT_TRUE(parse_builtin("border:0.5,0.25,3", in));
  EXPECT_NEAR(std::get<SymTensor>(in.tensor).coeff(0), 0.5, 1e-15);

  EXPECT_FALSE(parse_builtin("nosuch:1", in));
  EXPECT_FALSE(parse_builtin("plainfile.json", in));
}

TEST(Builtins, MalformedArgumentsReportPosition) {
  Input in{SymTensor(2, 1), ""};
  EXPECT_EQ(kind_of([&] { parse_builtin("wd:x", in); }), ErrorKind::parse_error);
  EXPECT_NE(message_of([&] { parse_builtin("ranktwo:1,abc,0.5,3", in); }).find("position 10"),
            std::string::npos);
  EXPECT_NE(message_of([&] { parse_builtin("wd:2.5", in); }).find("position 3"), std::string::npos);
  EXPECT_EQ(kind_of([&] { parse_builtin("ranktwo:1,1,1,3", in); }), ErrorKind::parse_error);
  EXPECT_EQ(kind_of([&] { parse_builtin("border:1,2", in); }), ErrorKind::parse_error);
}

TEST(LoadInput, ReadsBothSchemas) {
  const auto sym = write_temp("symratio_io_sym.json", to_json(make_w(4)).dump());
  const Input a = load_input(sym.string());
  ASSERT_TRUE(std::holds_alternative<SymTensor>(a.tensor));
  EXPECT_EQ(std::get<SymTensor>(a.tensor).order(), 4);

  const auto dense = write_temp("symratio_io_dense.json", R"({"dims": [2, 2, 2], "entries": [1,0,0,0,0,0,0,1]})");
  const Input b = load_input(dense.string());
  ASSERT_TRUE(std::holds_alternative<DenseTensor>(b.tensor));
  EXPECT_EQ(std::get<DenseTensor>(b.tensor).entries()[7], 1.0);
  std::filesystem::remove(sym);
  std::filesystem::remove(dense);
}

TEST(LoadInput, MalformedFileReportsByteOffset) {
  const auto path = write_temp("symratio_io_bad.json", R"({"order": 2, "dim": })");
  const std::string msg = message_of([&] { load_input(path.string()); });
  EXPECT_NE(msg.find("byte"), std::string::npos);
  EXPECT_EQ(kind_of([&] { load_input("/nonexistent/file.json"); }), ErrorKind::parse_error);
  std::filesystem::remove(path);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  const double x = 2.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(x)), x);
}
