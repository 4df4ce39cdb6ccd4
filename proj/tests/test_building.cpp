#include <doctest.h>

#include <string>

#include "heatcurve/building.hpp"
#include "heatcurve/errors.hpp"

using namespace heatcurve;

namespace {

const char* kMinimal = R"({
  "building_id": "demo",
  "construction_type": "MFH_F",
  "rooms": [
    {
      "id": "r1",
      "boundaries": [{"kind": "wall", "area_m2": 10.0}],
      "heaters": [{"id": "h1", "q_nom_W": 1000, "t_sup_nom_C": 70, "t_ret_nom_C": 55}]
    }
  ]
})";

std::string expect_error(const std::string& doc) {
    try {
        load_building(doc);
        FAIL("expected DataError");
        return {};
    } catch (const DataError& e) {
        return e.what();
    }
}

// Sixty rooms over two floors: 25 standard + 3 bathrooms + 1 hallway per
// floor, one staircase spanning both floors, one cellar entry.
std::string sixty_room_building() {
    std::string rooms;
    int heater_seq = 0;
    auto room = [&](const std::string& id, const std::string& type, int n_heaters,
                    bool near_hallway, int floor) {
        std::string r = "{\"id\":\"" + id + "\",\"room_type\":\"" + type + "\",";
        r += "\"boundaries\":[{\"kind\":\"wall\",\"area_m2\":12.5},";
        r += "{\"kind\":\"window\",\"area_m2\":2.0}";
        if (floor == 1) r += ",{\"kind\":\"roof\",\"area_m2\":16.0}";
        if (floor == 0) r += ",{\"kind\":\"floor_slab\",\"area_m2\":16.0}";
        r += "],\"heaters\":[";
        for (int h = 0; h < n_heaters; ++h) {
            if (h) r += ",";
            r += "{\"id\":\"h" + std::to_string(heater_seq++) +
                 "\",\"q_nom_W\":900,\"t_sup_nom_C\":70,\"t_ret_nom_C\":55}";
        }
        r += "]";
        if (near_hallway)
            r += ",\"hallway_shared_wall_m2\":{\"hall_f" + std::to_string(floor) +
                 "\":4.5}";
        r += "}";
        if (!rooms.empty()) rooms += ",";
        rooms += r;
    };
    for (int f = 0; f < 2; ++f) {
        const std::string fs = std::to_string(f);
        for (int i = 0; i < 25; ++i)
            room("room_f" + fs + "_" + std::to_string(i), "standard", 1 + (i % 2), i < 12, f);
        for (int i = 0; i < 3; ++i)
            room("bath_f" + fs + "_" + std::to_string(i), "bathroom", 1, false, f);
        room("hall_f" + fs, "hallway", 1, false, f);
    }
    room("staircase", "staircase", 1, false, 0);
    room("cellar_entry", "standard", 1, false, 0);
    return "{\"building_id\":\"block_a\",\"construction_type\":\"MFH_F\",\"rooms\":[" +
           rooms + "]}";
}

} // namespace

TEST_CASE("load_building: minimal document with defaults") {
    BuildingModel b = load_building(kMinimal);
    CHECK(b.building_id == "demo");
    CHECK(b.construction_type == "MFH_F");
    REQUIRE(b.rooms.size() == 1);
    const Room& r = b.rooms[0];
    CHECK(r.room_type == RoomType::standard);
    CHECK(r.t_in_C == 20.0);
    REQUIRE(r.heaters.size() == 1);
    CHECK(r.heaters[0].exponent_n == 1.3);
    CHECK(r.heaters[0].q_nom_W == 1000.0);
}

TEST_CASE("load_building: bathroom default setpoint and overrides") {
    BuildingModel b = load_building(R"({
      "building_id": "x", "construction_type": "T",
      "rooms": [
        {"id": "bath", "room_type": "bathroom"},
        {"id": "warm", "t_in_C": 22.5}
      ]
    })");
    CHECK(b.rooms[0].t_in_C == 18.0);
    CHECK(b.rooms[1].t_in_C == 22.5);

    BuildingDefaults d;
    d.exponent_n = 1.25;
    BuildingModel b2 = load_building(kMinimal, d);
    CHECK(b2.rooms[0].heaters[0].exponent_n == 1.25);
}

TEST_CASE("load_building: validation errors name the offending field") {
    std::string doc = kMinimal;

    SUBCASE("inverted supply/return") {
        auto pos = doc.find("\"t_sup_nom_C\": 70");
        doc.replace(pos, 17, "\"t_sup_nom_C\": 50");
        const std::string msg = expect_error(doc);
        CHECK(msg.find("rooms[0].heaters[0]") != std::string::npos);
    }
    SUBCASE("return below room temperature") {
        auto pos = doc.find("\"t_ret_nom_C\": 55");
        doc.replace(pos, 17, "\"t_ret_nom_C\": 19");
        CHECK(expect_error(doc).find("t_ret_nom_C") != std::string::npos);
    }
    SUBCASE("non-positive area") {
        auto pos = doc.find("\"area_m2\": 10.0");
        doc.replace(pos, 15, "\"area_m2\": 0");
        CHECK(expect_error(doc).find("boundaries[0].area_m2") != std::string::npos);
    }
    SUBCASE("unknown boundary kind") {
        auto pos = doc.find("\"wall\"");
        doc.replace(pos, 6, "\"celing\"");
        CHECK(expect_error(doc).find("celing") != std::string::npos);
    }
    SUBCASE("unknown field is rejected") {
        auto pos = doc.find("\"q_nom_W\"");
        doc.replace(pos, 9, "\"q_nom\"");
        CHECK(expect_error(doc).find("q_nom") != std::string::npos);
    }
    SUBCASE("exponent outside [1.0, 1.6]") {
        auto pos = doc.find("\"t_ret_nom_C\": 55");
        doc.replace(pos, 17, "\"t_ret_nom_C\": 55, \"exponent_n\": 1.7");
        CHECK(expect_error(doc).find("exponent_n") != std::string::npos);
    }
}

TEST_CASE("load_building: duplicate ids rejected") {
    CHECK(expect_error(R"({
      "building_id": "x", "construction_type": "T",
      "rooms": [{"id": "a"}, {"id": "a"}]
    })").find("duplicate room id") != std::string::npos);

    CHECK(expect_error(R"({
      "building_id": "x", "construction_type": "T",
      "rooms": [
        {"id": "a", "heaters": [{"id": "h", "q_nom_W": 1, "t_sup_nom_C": 70, "t_ret_nom_C": 55}]},
        {"id": "b", "heaters": [{"id": "h", "q_nom_W": 1, "t_sup_nom_C": 70, "t_ret_nom_C": 55}]}
      ]
    })").find("duplicate heater id") != std::string::npos);
}

TEST_CASE("load_building: hallway reference checks") {
    const char* tpl = R"({
      "building_id": "x", "construction_type": "T",
      "rooms": [
        {"id": "a", "hallway_shared_wall_m2": {"%s": 5.0}},
        {"id": "hall", "room_type": "hallway"},
        {"id": "other"}
      ]
    })";
    auto with = [&](const char* ref) {
        std::string s = tpl;
        s.replace(s.find("%s"), 2, ref);
        return s;
    };
    CHECK_NOTHROW(load_building(with("hall")));
    CHECK(expect_error(with("nope")).find("unknown hallway id") != std::string::npos);
    CHECK(expect_error(with("other")).find("not a hallway") != std::string::npos);
}

TEST_CASE("load_building: sixty rooms across two floors") {
    BuildingModel b = load_building(sixty_room_building());
    CHECK(b.rooms.size() == 60);
    CHECK(b.construction_type == "MFH_F");
    int hallways = 0, heaters = 0;
    for (const auto& r : b.rooms) {
        if (r.room_type == RoomType::hallway) ++hallways;
        heaters += static_cast<int>(r.heaters.size());
    }
    CHECK(hallways == 2);
    CHECK(heaters > 60);
}

TEST_CASE("building JSON round-trip is stable") {
    BuildingModel b = load_building(sixty_room_building());
    const std::string once = building_to_json(b);
    const std::string twice = building_to_json(load_building(once));
    CHECK(once == twice);
}

TEST_CASE("u_ratios: identity, direct division, scale invariance") {
    URatioTable same{2.0, 2.0, 2.0, 2.0};
    auto r1 = u_ratios(same);
    CHECK(r1[0] == 1.0);
    CHECK(r1[1] == 1.0);
    CHECK(r1[2] == 1.0);

    URatioTable t{1.0, 3.0, 0.5, 1.5};
    auto r = u_ratios(t);
    CHECK(r[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(r[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(r[2] == doctest::Approx(0.5).epsilon(1e-15));

    URatioTable t10{10.0, 30.0, 5.0, 15.0};
    auto r10 = u_ratios(t10);
    CHECK(r == r10); // exact: scaling by 10 keeps correctly-rounded quotients
}

TEST_CASE("relative_u anchors") {
    URatioTable t{1.0, 3.0, 0.5, 1.5};
    auto w = relative_u(t); // window anchor
    CHECK(w[1] == 1.0);
    CHECK(w[0] == doctest::Approx(1.0 / 3.0));
    auto a = relative_u(t, BoundaryKind::wall);
    CHECK(a[0] == 1.0);
    CHECK(a[1] == 3.0);
    CHECK(a[3] == 1.5);
}

TEST_CASE("load_u_table: lookup and errors") {
    const char* table = R"({
      "MFH_F": {"u_wall": 1.4, "u_window": 2.8, "u_roof": 1.0, "u_floor_slab": 1.2},
      "MFH_J": {"u_wall": 0.8, "u_window": 1.9, "u_roof": 0.5, "u_floor_slab": 0.8}
    })";
    URatioTable t = load_u_table(table, "MFH_J");
    CHECK(t.u_wall == 0.8);
    CHECK(t.u_window == 1.9);

    try {
        load_u_table(table, "SFH_X");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("SFH_X") != std::string::npos);
        CHECK(msg.find("MFH_F") != std::string::npos); // lists what exists
    }

    CHECK_THROWS_AS(load_u_table(R"({"A": {"u_wall": 0, "u_window": 1, "u_roof": 1,
                                   "u_floor_slab": 1}})", "A"), DataError);
    CHECK_THROWS_AS(load_u_table("[]", "A"), DataError);
}
