#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "biharm/config.hpp"
#include "biharm/expr.hpp"
#include "oracles.hpp"

namespace biharm {
namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

EnvLookup env_of(std::map<std::string, std::string> vars) {
  return [vars = std::move(vars)](const std::string& n) -> std::optional<std::string> {
    if (auto it = vars.find(n); it != vars.end()) return it->second;
    return std::nullopt;
  };
}

TEST(Config, DefaultsWhenNothingIsSet) {
  const Config c = resolve_config({}, std::nullopt, env_of({}));
  EXPECT_EQ(c.tau, 1e-6);
  EXPECT_EQ(c.abs_tol, 1e-10);
  EXPECT_EQ(c.samples, 50);
  EXPECT_EQ(c.format, "table");
}

TEST(Config, FlagBeatsEnvironmentBeatsFile) {
  const std::string file = write_temp("biharm_cfg_prec.conf", "# comment\ntau = 1e-5\nsamples=20\nformat = csv  # trailing\n");
  const Config f = resolve_config({}, file, env_of({}));
  EXPECT_EQ(f.tau, 1e-5);
  EXPECT_EQ(f.samples, 20);
  EXPECT_EQ(f.format, "csv");
  const Config e = resolve_config({}, file, env_of({{"BIHARM_TAU", "2e-6"}}));
  EXPECT_EQ(e.tau, 2e-6);
  EXPECT_EQ(e.samples, 20);
  const Config g = resolve_config({{"tau", "3e-7"}}, file, env_of({{"BIHARM_TAU", "2e-6"}}));
  EXPECT_EQ(g.tau, 3e-7);
  EXPECT_EQ(env_name("abs_tol"), "BIHARM_ABS_TOL");
}

TEST(Config, Errors) {
  EXPECT_THROW(read_config_file("/nonexistent/biharm.conf"), ConfigError);
  EXPECT_THROW(read_config_file(write_temp("biharm_cfg_bad1.conf", "colour = red\n")), ConfigError);
  EXPECT_THROW(read_config_file(write_temp("biharm_cfg_bad2.conf", "tau 1e-6\n")), ConfigError);
  EXPECT_THROW(resolve_config({{"tau", "abc"}}, std::nullopt, env_of({})), ConfigError);
  EXPECT_THROW(resolve_config({{"tau", "-1"}}, std::nullopt, env_of({})), ConfigError);
  EXPECT_THROW(resolve_config({{"format", "xml"}}, std::nullopt, env_of({})), ConfigError);
  EXPECT_THROW(resolve_config({{"samples", "0"}}, std::nullopt, env_of({})), ConfigError);
  EXPECT_THROW(resolve_config({}, std::nullopt, env_of({{"BIHARM_SEED", "x"}})), ConfigError);
}

TEST(Expr, ArithmeticAndPrecedence) {
  const std::vector<double> x = {2.0, 3.0, 0.5};
  EXPECT_DOUBLE_EQ(parse_field("1 + 2*3 - 4/2", 3)(x), 5.0);
  EXPECT_DOUBLE_EQ(parse_field("-x1^2", 3)(x), -4.0);
  EXPECT_DOUBLE_EQ(parse_field("2^3^2", 3)(x), 512.0);
  EXPECT_DOUBLE_EQ(parse_field("(x1 + x2) * x3", 3)(x), 2.5);
  EXPECT_DOUBLE_EQ(parse_field("x1^-1", 3)(x), 0.5);
  EXPECT_NEAR(parse_field("r", 3)(x), std::sqrt(13.25), 1e-15);
  EXPECT_NEAR(parse_field("ln(e) + cos(pi)", 3)(x), 0.0, 1e-15);
  EXPECT_NEAR(parse_field("x3^0.5", 3)(x), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(parse_field("theta", 2)(std::vector<double>{0.0, 1.0}), std::numbers::pi / 2, 1e-15);
}

TEST(Expr, ParsedFieldsCarryDerivatives) {
  const ScalarField f = parse_field("ln(1 - x3/r)", 3);
  const ScalarField g(3, [](auto x) { return log(1.0 - x[2] / norm(x)); });
  const std::vector<double> x = {0.3, -0.2, 0.4};
  EXPECT_NEAR(euclidean_laplacian(f, x), euclidean_laplacian(g, x), 1e-12);
  EXPECT_NEAR(euclidean_bilaplacian(f, x), euclidean_bilaplacian(g, x), 1e-9);
  const oracle::FnN h = [](const std::vector<double>& y) { return std::exp(y[0]) * std::sin(y[1]); };
  const std::vector<double> y = {0.4, 1.1};
  EXPECT_NEAR(euclidean_laplacian(parse_field("exp(x1)*sin(x2) + x1*x2", 2), y), oracle::laplacian(h, y), 1e-7);
}

TEST(Expr, Univariate) {
  const UnivariateFn s = parse_univariate("sinh(t)/t", "t");
  EXPECT_NEAR(s(0.5), std::sinh(0.5) / 0.5, 1e-15);
  const UnivariateFn w = parse_univariate("arctan(r) + coth(r)");
  EXPECT_NEAR(w(1.2), std::atan(1.2) + 1.0 / std::tanh(1.2), 1e-15);
}

TEST(Expr, Errors) {
  EXPECT_THROW(parse_field("x4", 3), ParseError);
  EXPECT_THROW(parse_field("x1 +", 3), ParseError);
  EXPECT_THROW(parse_field("foo(x1)", 3), ParseError);
  EXPECT_THROW(parse_field("(x1", 3), ParseError);
  EXPECT_THROW(parse_field("x1 x2", 3), ParseError);
  EXPECT_THROW(parse_field("theta", 1), ParseError);
  EXPECT_THROW(parse_univariate("r + x1"), ParseError);
  EXPECT_THROW(parse_field("x1", 0), DomainError);
  try {
    parse_field("x1 + $", 2);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find('$'), std::string::npos);
  }
}

}  // namespace
}  // namespace biharm
