// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "rsoccer/entities.hpp"

using namespace rsoccer;

namespace {

Robot make_robot(TeamColor team, int id, double x = 0.0, double y = 0.0) {
    Robot r;
    r.team = team;
    r.id = id;
    r.x = x;
    r.y = y;
    return r;
}

Frame random_frame(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_int_distribution<int> count(0, 11);
    Frame f;
    f.ball = {u(rng), u(rng), u(rng), u(rng)};
    for (TeamColor team : {TeamColor::Blue, TeamColor::Yellow}) {
        const int n = count(rng);
        for (int id = 0; id < n; ++id) {
            Robot r = make_robot(team, id * 3, u(rng), u(rng));
            r.theta = normalize_angle_deg(u(rng) * 100.0);
            r.vx = u(rng);
            r.vy = u(rng) * 1e-7;
            r.vtheta = u(rng) * 1e5;
            r.wheel_speeds = {u(rng), u(rng), u(rng) / 3.0};
            r.ir = (id % 2) == 0;
            r.kick_power = std::abs(u(rng)) / 5.0;
            r.dribbler_on = (id % 3) == 0;
            f.put(r);
        }
    }
    f.step_count = rng() % 100000;
    f.sim_time = static_cast<double>(f.step_count) * 0.025;
    return f;
}

}  // namespace

TEST(GetRobot, ReturnsStoredRobot) {
    Frame f;
    f.put(make_robot(TeamColor::Blue, 0, 0.0, 0.0));
    const Robot& r = get_robot(f, TeamColor::Blue, 0);
    EXPECT_EQ(r.x, 0.0);
    EXPECT_EQ(r.y, 0.0);
    EXPECT_EQ(r.team, TeamColor::Blue);
}

TEST(GetRobot, IndexesByTeamAndId) {
    Frame f;
    for (int id = 0; id < 6; ++id) {
        f.put(make_robot(TeamColor::Blue, id, -1.0, id));
        f.put(make_robot(TeamColor::Yellow, id, 1.0, id));
    }
    const Robot& r = get_robot(f, TeamColor::Yellow, 5);
    EXPECT_EQ(r.id, 5);
    EXPECT_EQ(r.team, TeamColor::Yellow);
    EXPECT_EQ(r.x, 1.0);
}

TEST(GetRobot, MissingPairNamesTeamAndId) {
    Frame f;
    f.put(make_robot(TeamColor::Blue, 0));
    f.put(make_robot(TeamColor::Yellow, 0));
    try {
        get_robot(f, TeamColor::Blue, 3);
        FAIL() << "expected LookupError";
    } catch (const LookupError& e) {
        EXPECT_NE(std::string(e.what()).find("blue, 3"), std::string::npos);
    }
}

TEST(NormalizeAngle, Examples) {
    EXPECT_EQ(normalize_angle_deg(0.0), 0.0);
    EXPECT_EQ(normalize_angle_deg(-90.0), 270.0);
    EXPECT_EQ(normalize_angle_deg(725.5), 5.5);
    EXPECT_EQ(normalize_angle_deg(360.0), 0.0);
    EXPECT_EQ(normalize_angle_deg(-1e-18), 0.0);
}

TEST(NormalizeAngle, RejectsNonFinite) {
    EXPECT_THROW(normalize_angle_deg(std::numeric_limits<double>::quiet_NaN()), DomainError);
    EXPECT_THROW(normalize_angle_deg(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(NormalizeAngle, RangeAndCongruence) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e4, 1e4);
    for (int i = 0; i < 10000; ++i) {
        const double a = u(rng);
        const double n = normalize_angle_deg(a);
        ASSERT_GE(n, 0.0);
        ASSERT_LT(n, 360.0);
        const double k = (a - n) / 360.0;
        ASSERT_NEAR(k, std::round(k), 1e-9);
    }
}

TEST(FieldContains, ClosedBoundary) {
    const Field f = Field::vsss();
    EXPECT_TRUE(field_contains(f, 0.0, 0.0));
    EXPECT_FALSE(field_contains(f, f.length / 2 + 1e-9, 0.0));
    EXPECT_TRUE(field_contains(f, f.length / 2, f.width / 2));
    EXPECT_TRUE(field_contains(f, -f.length / 2, -f.width / 2));
    EXPECT_FALSE(field_contains(f, 0.0, -f.width / 2 - 1e-9));
}

TEST(FieldConfig, DefaultsValidate) {
    EXPECT_NO_THROW(Field::vsss().validate());
    EXPECT_NO_THROW(Field::ssl().validate());
}

TEST(FieldConfig, RejectsBadGeometry) {
    Field f = Field::vsss();
    f.goal_width = f.width;
    EXPECT_THROW(f.validate(), ConfigError);
    f = Field::ssl();
    f.robot_radius = 0.0;
    EXPECT_THROW(f.validate(), ConfigError);
    f = Field::ssl();
    f.n_robots_yellow = -1;
    EXPECT_THROW(f.validate(), ConfigError);
}

TEST(FieldConfig, JsonRoundTrip) {
    for (const Field& f : {Field::vsss(), Field::ssl()}) {
        EXPECT_EQ(field_from_json(field_to_json(f)), f);
    }
}

TEST(FieldConfig, AsymmetricTeamSizes) {
    auto j = field_to_json(Field::ssl());
    j["n_robots_blue"] = 1;
    j["n_robots_yellow"] = 0;
    const Field f = field_from_json(j);
    EXPECT_EQ(f.n_robots_blue, 1);
    EXPECT_EQ(f.n_robots_yellow, 0);
}

TEST(FieldConfig, UnknownKeyRejected) {
    auto j = field_to_json(Field::vsss());
    j["gravity"] = 9.81;
    EXPECT_THROW(field_from_json(j), ConfigError);
}

TEST(FieldConfig, LoadsFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "rsoccer_field_test.json";
    {
        std::ofstream out(path);
        out << R"({"league": "ssl", "n_robots_blue": 11, "n_robots_yellow": 11})";
    }
    const Field f = load_field_config(path);
    EXPECT_EQ(f.league, League::SSL);
    EXPECT_EQ(f.n_robots_blue, 11);
    EXPECT_EQ(f.length, 9.0);
    std::filesystem::remove(path);
}

TEST(TrajectoryLog, RoundTripPreservesEveryField) {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 500; ++i) {
        const Frame f = random_frame(rng);
        const std::string line = frame_to_log_line(f);
        ASSERT_EQ(line.find('\n'), std::string::npos);
        const Frame back = frame_from_log_line(line);
        ASSERT_EQ(back, f) << line;
        ASSERT_EQ(frame_to_log_line(back), line);
    }
}

TEST(TrajectoryLog, LineHasDocumentedKeys) {
    Frame f;
    f.put(make_robot(TeamColor::Blue, 2, 0.5, -0.25));
    const auto j = nlohmann::json::parse(frame_to_log_line(f));
    for (const char* key : {"ball", "robots_blue", "robots_yellow", "step_count", "sim_time"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["robots_blue"][0]["id"], 2);
    EXPECT_EQ(j["robots_blue"][0]["x"], 0.5);
}

TEST(TrajectoryLog, ParseErrorCarriesLineNumber) {
    try {
        frame_from_log_line("{\"ball\": 3", 3);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(TrajectoryLog, DuplicateIdsRejected) {
    Frame f;
    f.put(make_robot(TeamColor::Blue, 1));
    std::string line = frame_to_log_line(f);
    const std::string robot = line.substr(line.find("[{") + 1, line.find("}]") - line.find("[{"));
    const std::string dup = line.replace(line.find("[{"), robot.size() + 2, "[" + robot + "," + robot + "]");
    EXPECT_THROW(frame_from_log_line(dup), ParseError);
}
