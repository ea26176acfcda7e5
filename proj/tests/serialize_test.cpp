// Copyright 2026 The dimarket Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dim/serialize.hpp"

#include <gtest/gtest.h>

#include "dim/engine.hpp"
#include "dim/errors.hpp"
#include "dim/random.hpp"

namespace dim {
namespace {

using io::Json;

TEST(SerializeTest, RationalForms) {
  EXPECT_EQ(io::rational_to_json(Rational(3, 4)), Json("3/4"));
  EXPECT_EQ(io::rational_to_json(Rational(-1)), Json("-1"));
  EXPECT_EQ(io::rational_from_json(Json("6/8"), "p"), Rational(3, 4));
  EXPECT_EQ(io::rational_from_json(Json(2), "p"), Rational(2));
  EXPECT_THROW(io::rational_from_json(Json("1/0"), "p"), ValidationError);
  EXPECT_THROW(io::rational_from_json(Json(0.5), "p"), ValidationError);
}

TEST(SerializeTest, SecuritySchemas) {
  const auto xor_g = io::security_from_json(Json::parse(R"({"type":"parity","n_players":2,"sign":1,"mask":[1,2]})"));
  EXPECT_EQ(xor_g, Security::parity(2, 1, 0b11));
  const auto maj = io::security_from_json(Json::parse(R"({"type":"threshold","w":["1","1","1"],"theta":"1"})"));
  EXPECT_EQ(maj.to_table(), Security::majority(3).to_table());
  const auto sym = io::security_from_json(Json::parse(R"({"type":"symmetric","levels":[1,-1,1]})"));
  EXPECT_EQ(sym.to_table(), xor_g.to_table());
  const auto table = io::security_from_json(Json::parse(R"({"type":"table","values":[1,-1,-1,1]})"));
  EXPECT_EQ(table.to_table(), xor_g.to_table());
}

TEST(SerializeTest, SecurityErrorsNameTheField) {
  const auto fails_with = [](const char* text, const char* fragment) {
    try {
      io::security_from_json(Json::parse(text));
    } catch (const ValidationError& e) {
      return std::string(e.what()).find(fragment) != std::string::npos;
    } catch (const DimensionError&) {
      return std::string(fragment) == "dimension";
    }
    return false;
  };
  EXPECT_TRUE(fails_with(R"({"type":"parity","n_players":2,"sign":1,"mask":[3]})", "mask"));
  EXPECT_TRUE(fails_with(R"({"type":"widget"})", "widget"));
  EXPECT_TRUE(fails_with(R"({"type":"table","values":[1,-1,1]})", "length"));
  EXPECT_TRUE(fails_with(R"({"type":"symmetric"})", "levels"));
}

TEST(SerializeTest, PriorSchemas) {
  EXPECT_EQ(io::prior_from_json(Json::parse(R"({"type":"product_biased","n_players":2,"p":"3/4"})"))
                .mass_table(),
            Prior::product_biased(2, Rational(3, 4)).mass_table());
  EXPECT_EQ(io::prior_from_json(Json::parse(R"({"type":"product_biased","n_players":2,"m":"1/2"})"))
                .mass_table(),
            Prior::product_biased(2, Rational(3, 4)).mass_table());
  EXPECT_EQ(io::prior_from_json(Json::parse(R"({"type":"uniform","n_players":3})")).mass_table(),
            Prior::uniform(3).mass_table());
  EXPECT_THROW(io::prior_from_json(Json::parse(R"({"type":"table","masses":["1/2","1/4","1/4","1/4"]})")),
               ValidationError);
  EXPECT_THROW(io::prior_from_json(Json::parse(R"({"type":"product","p":["1/3","1"]})")), ValidationError);
}

TEST(SerializeTest, StateForms) {
  EXPECT_EQ(io::state_from_json(Json("+-"), 2), SpinState(2, 0b01));
  EXPECT_EQ(io::state_from_json(Json::parse("[-1, 1]"), 2), SpinState(2, 0b10));
  EXPECT_EQ(io::state_from_json(Json(3), 2), SpinState(2, 0b11));
  EXPECT_THROW(io::state_from_json(Json("+x"), 2), ValidationError);
  EXPECT_THROW(io::state_from_json(Json("+"), 2), ValidationError);
}

TEST(SerializeTest, RandomRoundTrips) {
  gen::Rng rng(83);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 5;
    const Security g = gen::random_security(n, rng);
    const Prior p = gen::random_prior(n, rng);
    ASSERT_EQ(io::security_from_json(Json::parse(io::security_to_json(g).dump())), g);
    ASSERT_EQ(io::prior_from_json(Json::parse(io::prior_to_json(p).dump())), p);
    const SpinState s(n, static_cast<StateIndex>(gen::uniform_int(rng, 0, (1 << n) - 1)));
    const Trace t = run_dynamics(g, p, s, trial % 7 == 0 ? 1 : default_max_rounds(n));
    const Trace back = io::trace_from_json(Json::parse(io::canonical(t)));
    ASSERT_EQ(back, t);
    ASSERT_EQ(io::canonical(back), io::canonical(t));
  }
}

TEST(SerializeTest, CsvSummary) {
  const Trace t = run_dynamics(Security::parity(2, 1, 0b11), Prior::uniform(2), SpinState(2, 0b11), 4);
  EXPECT_EQ(io::summary_csv_header(), "true_state,equilibrium_round,final_price,converged");
  EXPECT_EQ(io::summary_csv_row(t), "++,1,0,false");
}

TEST(SerializeTest, ReportJson) {
  const auto j = io::report_to_json(classify(Security::majority(3), Prior::uniform(3)));
  EXPECT_TRUE(j.at("threshold").is_object());
  EXPECT_EQ(j.at("gamma0").at("covariance_gap"), Json("1/2"));
}

}  // namespace
}  // namespace dim
