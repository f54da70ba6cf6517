#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "intertwine/errors.hpp"
#include "intertwine/field_io.hpp"
#include "intertwine/spectral_field.hpp"

using namespace intertwine;
using C = Complex;

TEST_CASE("layout and evaluation") {
    SpectralField F(2, 3);
    CHECK(F.size() == 49);
    F.at({1, -2}) = C(2, 0);
    CHECK(F.coeffs()[F.index({1, -2})] == C(2, 0));
    CHECK(F.stride(1) == 7);
    CHECK(F.stride(2) == 1);
    const C v = F.evaluate({0.3, 0.5});
    CHECK(std::abs(v - 2.0 * std::exp(C(0, 0.3 - 1.0))) < 1e-15);
    CHECK(std::abs(F.norm() - 2.0) < 1e-15);
    CHECK(F.band_edge_energy() == doctest::Approx(0.0));
    F.at({3, 0}) = C(0, 2);
    CHECK(F.band_edge_energy() == doctest::Approx(0.5));
}

TEST_CASE("analyze inverts synthesize") {
    const SpectralField F = random_band_limited(2, 5, 0.3, 11);
    const GridSamples g = synthesize(F, GridSpec{11, 2});
    CHECK(g.M == 22);
    const SpectralField G = analyze(g, 5);
    CHECK((G - F).norm() < 1e-14);
    CHECK_THROWS_AS(analyze(g, 11), ShapeError);
}

TEST_CASE("transform friendly sizes") {
    CHECK(transform_friendly_size(7) == 8);
    CHECK(transform_friendly_size(61) == 64);
    CHECK(transform_friendly_size(49) == 50);
}

TEST_CASE("inner product and shape errors") {
    const SpectralField F = random_band_limited(1, 8, 0.5, 1);
    CHECK(std::abs(inner_product(F, F) - C(F.norm() * F.norm(), 0)) < 1e-15);
    CHECK_THROWS_AS(inner_product(F, SpectralField(1, 7)), ShapeError);
    CHECK_THROWS_AS(inner_product(F, SpectralField(2, 8)), ShapeError);
}

TEST_CASE("rebanding pads and truncates") {
    const SpectralField F = random_band_limited(2, 4, 0.5, 2);
    const SpectralField G = F.rebanded(9);
    CHECK(std::abs(G.norm() - F.norm()) < 1e-15);
    CHECK((G.rebanded(4) - F).norm() == 0.0);
}

TEST_CASE("bump fields vanish near the diagonal") {
    const SpectralField F = modulated_bump_field(2, 48, all_diagonal_pairs(2), 0.5, 5);
    CHECK(std::abs(F.norm() - 1.0) < 1e-12);
    // only the band projection of the bump, so not exactly zero
    CHECK(std::abs(F.evaluate({1.0, 1.2})) < 1e-4);
    CHECK(std::abs(F.evaluate({1.0, 1.0 + M_PI})) > 1e-3);
    CHECK(all_diagonal_pairs(3).size() == 3);
    CHECK_THROWS_AS(diagonal_bump_field(2, 8, {{1, 2}}, 3.5), DomainError);
}

TEST_CASE("random fields are deterministic per seed") {
    const SpectralField a = random_band_limited(3, 4, 0.5, 42);
    const SpectralField b = random_band_limited(3, 4, 0.5, 42);
    const SpectralField c = random_band_limited(3, 4, 0.5, 43);
    CHECK(a.coeffs() == b.coeffs());
    CHECK(a.coeffs() != c.coeffs());
}

TEST_CASE("JSON round trip is bit exact") {
    const SpectralField F = random_band_limited(2, 6, 0.2, 9);
    const nlohmann::json j = field_to_json(F);
    CHECK(j["format"] == "intertwine.spectral_field");
    const SpectralField G = field_from_json(nlohmann::json::parse(j.dump()));
    CHECK(G.coeffs() == F.coeffs());

    const auto path = std::filesystem::temp_directory_path() / "intertwine_field_test.json";
    save_field(F, path.string());
    CHECK(load_field(path.string()).coeffs() == F.coeffs());
    std::filesystem::remove(path);

    nlohmann::json bad = j;
    bad["coeffs"].erase(0);
    CHECK_THROWS_AS(field_from_json(bad), StructureError);
}

TEST_CASE("Parseval on oversampled grids") {
    for (int m : {1, 2, 3}) {
        const SpectralField F = random_band_limited(m, 6, 0.3, 17);
        const GridSamples g = synthesize(F, GridSpec{13, 2});
        double mean = 0;
        for (const C& v : g.values) mean += std::norm(v);
        mean /= static_cast<double>(g.values.size());
        CHECK(std::abs(F.norm() * F.norm() - mean) <= 1e-12);
    }
}

TEST_CASE("bump fields vanish on the declared neighbourhood to 1e-8 at N=64") {
    auto worst_inside = [](int N) {
        const SpectralField F = diagonal_bump_field(2, N, {{1, 2}}, 0.5);
        double w = 0;
        for (int i = 0; i < 60; ++i) {
            const double x = 0.1 * i;
            for (int j = -50; j <= 50; ++j) w = std::max(w, std::abs(F.evaluate({x, x + 0.01 * j})));
        }
        return w;
    };
    const double w32 = worst_inside(32), w64 = worst_inside(64);
    CHECK(w64 <= 1e-8);
    CHECK(w64 < w32);
}
