#include "intertwine/field_io.hpp"

#include <fstream>

#include "intertwine/errors.hpp"

namespace intertwine {

namespace {

constexpr const char* kFormat = "intertwine.spectral_field";
constexpr const char* kLayout = "row-major, axis 1 slowest, n_k = -N..N, interleaved re/im";

}  // namespace

nlohmann::json field_to_json(const SpectralField& F) {
    nlohmann::json doc;
    doc["format"] = kFormat;
    doc["version"] = 1;
    doc["m"] = F.dim();
    doc["N"] = F.band();
    doc["layout"] = kLayout;
    std::vector<double> flat;
    flat.reserve(2 * F.size());
    for (const auto& c : F.coeffs()) {
        flat.push_back(c.real());
        flat.push_back(c.imag());
    }
    doc["coeffs"] = std::move(flat);
    return doc;
}

SpectralField field_from_json(const nlohmann::json& doc) {
    try {
        if (doc.at("format").get<std::string>() != kFormat || doc.at("version").get<int>() != 1) {
            throw StructureError("field document: unknown format or version");
        }
        const int m = doc.at("m").get<int>();
        const int N = doc.at("N").get<int>();
        const auto flat = doc.at("coeffs").get<std::vector<double>>();
        if (flat.size() % 2 != 0) throw StructureError("field document: odd coefficient count");
        std::vector<Complex> coeffs(flat.size() / 2);
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = {flat[2 * i], flat[2 * i + 1]};
        return SpectralField(m, N, std::move(coeffs));
    } catch (const nlohmann::json::exception& e) {
        throw StructureError(std::string("field document: ") + e.what());
    }
}

void save_field(const SpectralField& F, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw StructureError("cannot open " + path + " for writing");
    out << field_to_json(F).dump() << '\n';
}

SpectralField load_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructureError("cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw StructureError(std::string("field file: ") + e.what());
    }
    return field_from_json(doc);
}

}  // namespace intertwine
