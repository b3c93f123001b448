#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "tailforge/specfun.hpp"
#include "tailforge/table.hpp"

using namespace tailforge;

namespace {
Table sample() {
  Table t({{"name"}, {"n"}, {"value", true}, {"prob"}});
  t.add_row({std::string("a,b"), 3LL, 0.6931471805599453, 0.125});
  t.add_row({std::string("c"), 4LL, kInf, 1.0 / 3.0});
  return t;
}
}  // namespace

TEST(Format, FixedDecimals) {
  EXPECT_EQ(format_number(0.5, 3), "0.500");
  EXPECT_EQ(format_number(kInf, 6), "inf");
  EXPECT_EQ(format_number(-1e-9, 4), "0.0000");
  EXPECT_EQ(format_number(1.23456789, 15), "1.234567890000000");
}

TEST(Csv, HeaderQuotingAndInf) {
  std::ostringstream os;
  write_csv(os, sample(), {OutputFormat::csv, 4, Units::nats});
  EXPECT_EQ(os.str(), "name,n,value,prob\n\"a,b\",3,0.6931,0.1250\nc,4,inf,0.3333\n");
}

TEST(Csv, BitsConvertOnlyExponentColumns) {
  std::ostringstream os;
  write_csv(os, sample(), {OutputFormat::csv, 4, Units::bits});
  EXPECT_NE(os.str().find("1.0000,0.1250"), std::string::npos);
}

TEST(Json, RoundTripsAtPrecision) {
  for (int prec : {1, 6, 15}) {
    std::ostringstream js, cs;
    OutputOptions o{OutputFormat::json, prec, Units::nats};
    write_json(js, sample(), o);
    auto doc = nlohmann::json::parse(js.str());
    ASSERT_EQ(doc["rows"].size(), 2u);
    EXPECT_EQ(doc["rows"][1]["value"], "inf");
    for (const char* col : {"value", "prob"}) {
      const auto& cell = doc["rows"][0][col];
      double orig = col == std::string("value") ? 0.6931471805599453 : 0.125;
      EXPECT_EQ(format_number(cell.get<double>(), prec), format_number(orig, prec));
    }
    EXPECT_EQ(format_number(doc["rows"][1]["prob"].get<double>(), prec), format_number(1.0 / 3.0, prec));
  }
}

TEST(TableTest, Validation) {
  Table t({{"a"}});
  EXPECT_THROW(t.add_row({1.0, 2.0}), DomainError);
  std::ostringstream os;
  EXPECT_THROW(write_csv(os, sample(), {OutputFormat::csv, 0, Units::nats}), DomainError);
  EXPECT_THROW(write_csv(os, sample(), {OutputFormat::csv, 16, Units::nats}), DomainError);
}
