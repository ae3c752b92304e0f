// Copyright 2026 The proctensor Authors
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

#include <string>

#include <gtest/gtest.h>

#include "proctensor/bench.h"
#include "proctensor/catalog.h"
#include "proctensor/error.h"
#include "proctensor/linalg.h"
#include "proctensor/recovery.h"

namespace pt = proctensor;
namespace bn = proctensor::bench;

TEST(Config, DefaultsAndOverrides) {
    const auto c = bn::config_from_json(bn::Json::parse(
        R"({"preset": "tomo", "seed": 7, "tomo_shots": 5000, "tolerances": {"tomo_fidelity": 0.9}})"));
    EXPECT_EQ(c.preset, "tomo");
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.tomo_shots, 5000u);
    EXPECT_EQ(c.bootstrap_resamples, 500u);
    EXPECT_EQ(c.tolerance("tomo_fidelity", 0.99), 0.9);
    EXPECT_EQ(c.tolerance("survey", 0.01), 0.01);
    EXPECT_EQ(bn::config_from_json(bn::Json::object()).seed, 1234u);
}

TEST(Config, Rejections) {
    for (const char* text : {R"({"colour": 1})", R"({"tolerances": {"made_up": 1}})", R"({"format": "xml"})",
                             R"({"scan_steps": 0})", R"({"survey_samples": 99})", R"({"bootstrap_resamples": 1})",
                             R"({"seed": "abc"})", "[1, 2]"}) {
        EXPECT_THROW(bn::config_from_json(bn::Json::parse(text)), pt::ValidationError) << text;
    }
}

TEST(ReplayNoise, ReachesExperimentalFidelityScale) {
    const auto n = bn::replay_noise("lambda");
    const pt::Matrix g = pt::catalog::lambda_state();
    const double f = pt::linalg::fidelity(g, pt::recovery::noisy_replay(g, {2, 2, 2}, n, 1));
    EXPECT_GT(f, 0.97);
    EXPECT_LT(f, 0.999);
    EXPECT_THROW(bn::replay_noise("nu"), pt::ValidationError);
}

TEST(Presets, WalkIsByteDeterministic) {
    bn::RunConfig c;
    c.preset = "walk";
    const auto a = bn::run_preset(c), b = bn::run_preset(c);
    EXPECT_EQ(a.body.dump(), b.body.dump());
    EXPECT_EQ(a.csv, b.csv);
    EXPECT_EQ(a.csv.substr(0, a.csv.find('\n')), "circuit,element,row,col,re,im,target_re,target_im");
    EXPECT_TRUE(a.body.contains("checks"));
}

TEST(Presets, QuantitiesCarryReferences) {
    bn::RunConfig c;
    c.scan_steps = 8;
    const auto r = bn::preset_process2(c);
    const auto& n = r.body.at("non_markovianity");
    EXPECT_TRUE(n.contains("value"));
    ASSERT_TRUE(n.at("reference").is_array());
    EXPECT_EQ(n.at("reference")[0].at("kind"), "theoretical");
    EXPECT_EQ(n.at("reference")[1].at("kind"), "experimental");
    EXPECT_TRUE(n.contains("pass"));
    if (!r.body.at("checks").at("non_markovianity").get<bool>()) EXPECT_TRUE(r.tolerance_failure);
}

TEST(Presets, UnknownNameRejected) {
    bn::RunConfig c;
    c.preset = "process9";
    EXPECT_THROW(bn::run_preset(c), pt::ValidationError);
}
