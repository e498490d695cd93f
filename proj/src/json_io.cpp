#include "puremin/json_io.hpp"

#include <limits>
#include <stdexcept>

namespace puremin {

namespace {

// exact integers: JSON numbers while they fit in 64 bits, decimal strings above
Json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return Json(v.convert_to<long long>());
    return Json(v.str());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer or a decimal string");
}

bool fraction_ring(const RingSpec& r) {
    return r.kind() == RingKind::invert_primes || r.kind() == RingKind::local_at;
}

Json entry_to_json(const RingSpec& ring, const RingElem& e) {
    if (!fraction_ring(ring)) return int_to_json(e.num);
    return Json::array({int_to_json(e.num), int_to_json(e.den)});
}

RingElem entry_from_json(const RingSpec& ring, const Json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw std::invalid_argument("fraction entries are [num, den]");
        return ring.from_fraction(int_from_json(j[0]), int_from_json(j[1]));
    }
    return ring.from_int(int_from_json(j));
}

}  // namespace

Json ring_to_json(const RingSpec& r) {
    Json j;
    switch (r.kind()) {
        case RingKind::integers:
            j["kind"] = "int";
            break;
        case RingKind::residues:
            j["kind"] = "int_mod";
            j["n"] = int_to_json(r.modulus());
            break;
        case RingKind::invert_primes: {
            j["kind"] = "int_invert";
            Json primes = Json::array();
            for (const Int& p : r.inverted_primes()) primes.push_back(int_to_json(p));
            j["primes"] = primes;
            break;
        }
        case RingKind::local_at:
            j["kind"] = "int_local_at";
            j["p"] = int_to_json(r.local_prime());
            break;
    }
    return j;
}

RingSpec ring_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("ring: expected an object with a \"kind\" key");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "int") return RingSpec::integers();
    if (kind == "int_mod") return RingSpec::residues(int_from_json(j.at("n")));
    if (kind == "int_invert") {
        std::vector<Int> primes;
        for (const Json& p : j.at("primes")) primes.push_back(int_from_json(p));
        return RingSpec::invert_primes(std::move(primes));
    }
    if (kind == "int_local_at") return RingSpec::local_at(int_from_json(j.at("p")));
    throw std::invalid_argument("ring: unknown kind \"" + kind + "\"");
}

Json matrix_to_json(const Matrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json entries = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(entry_to_json(m.ring(), m.at(i, c)));
        entries.push_back(row);
    }
    j["entries"] = entries;
    return j;
}

Matrix matrix_from_json(const RingSpec& ring, const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols"))
        throw std::invalid_argument("matrix: expected {\"rows\", \"cols\", \"entries\"}");
    int rows = j.at("rows").get<int>();
    int cols = j.at("cols").get<int>();
    Matrix m(ring, rows, cols);
    if (rows * cols == 0) return m;
    const Json& entries = j.at("entries");
    if (!entries.is_array() || static_cast<int>(entries.size()) != rows)
        throw std::invalid_argument("matrix: entries must hold one array per row");
    for (int i = 0; i < rows; ++i) {
        const Json& row = entries[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("matrix: ragged entry rows");
        for (int c = 0; c < cols; ++c) m.set(i, c, entry_from_json(ring, row[c]));
    }
    return m;
}

Json module_to_json(const FPModule& m) {
    if (m.relations().cols() == 0) {
        Json j;
        j["free_rank"] = m.generators();
        return j;
    }
    Json j;
    j["generators"] = m.generators();
    j["relations"] = matrix_to_json(m.relations());
    return j;
}

FPModule module_from_json(const RingSpec& ring, const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("module: expected an object");
    if (j.contains("free_rank")) return FPModule::free(ring, j.at("free_rank").get<int>());
    if (!j.contains("generators"))
        throw std::invalid_argument("module: needs \"generators\" or \"free_rank\"");
    int g = j.at("generators").get<int>();
    Matrix rel = j.contains("relations") ? matrix_from_json(ring, j.at("relations"))
                                         : Matrix(ring, g, 0);
    return FPModule(ring, g, rel);
}

Json complex_to_json(const ChainComplex& c) {
    Json j;
    j["ring"] = ring_to_json(c.ring());
    Json shape;
    if (c.is_periodic()) {
        shape["kind"] = "periodic";
        shape["period"] = c.period();
    } else {
        shape["kind"] = "bounded";
        shape["min"] = c.min_degree();
        shape["max"] = c.max_degree();
    }
    j["shape"] = shape;
    Json modules = Json::object();
    Json diffs = Json::object();
    for (int d : c.degrees()) {
        if (c.module_at(d).generators() > 0)
            modules[std::to_string(d)] = module_to_json(c.module_at(d));
        Matrix diff = c.differential_at(d);
        if (!diff.is_zero()) diffs[std::to_string(d)] = matrix_to_json(diff);
    }
    j["modules"] = modules;
    j["differentials"] = diffs;
    return j;
}

ChainComplex complex_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("shape"))
        throw std::invalid_argument("complex: expected {\"ring\", \"shape\", \"modules\", ...}");
    RingSpec ring = ring_from_json(j.at("ring"));
    const Json& shape = j.at("shape");
    std::string kind = shape.at("kind").get<std::string>();
    auto read_modules = [&](int lo, int hi) {
        std::vector<FPModule> mods;
        for (int d = lo; d <= hi; ++d) {
            std::string key = std::to_string(d);
            if (j.contains("modules") && j.at("modules").contains(key))
                mods.push_back(module_from_json(ring, j.at("modules").at(key)));
            else
                mods.push_back(FPModule::zero(ring));
        }
        return mods;
    };
    auto read_diff = [&](int d, int rows, int cols) {
        std::string key = std::to_string(d);
        if (j.contains("differentials") && j.at("differentials").contains(key)) {
            Matrix m = matrix_from_json(ring, j.at("differentials").at(key));
            if (m.rows() != rows || m.cols() != cols)
                throw std::invalid_argument("complex: differential " + key +
                                            " has the wrong shape");
            return m;
        }
        return Matrix(ring, rows, cols);
    };
    if (kind == "bounded") {
        int lo = shape.at("min").get<int>();
        int hi = shape.at("max").get<int>();
        if (hi < lo) return ChainComplex::zero_bounded(ring);
        std::vector<FPModule> mods = read_modules(lo, hi);
        std::vector<Matrix> diffs;
        for (int d = lo + 1; d <= hi; ++d)
            diffs.push_back(
                read_diff(d, mods[d - 1 - lo].generators(), mods[d - lo].generators()));
        return ChainComplex::bounded(ring, lo, std::move(mods), std::move(diffs));
    }
    if (kind == "periodic") {
        int q = shape.at("period").get<int>();
        if (q < 1) throw std::invalid_argument("complex: period must be positive");
        std::vector<FPModule> mods = read_modules(0, q - 1);
        std::vector<Matrix> diffs;
        for (int r = 0; r < q; ++r)
            diffs.push_back(read_diff(r, mods[((r - 1) % q + q) % q].generators(),
                                      mods[r].generators()));
        return ChainComplex::periodic(ring, std::move(mods), std::move(diffs));
    }
    throw std::invalid_argument("complex: unknown shape kind \"" + kind + "\"");
}

Json homotopy_to_json(const Homotopy& h) {
    Json j = Json::object();
    for (const auto& [deg, m] : h.components) j[std::to_string(deg)] = matrix_to_json(m);
    return j;
}

Json diagnosis_to_json(const DiagnosisReport& r) {
    Json j;
    j["acyclic"] = r.acyclic;
    j["pure_acyclic"] = r.pure_acyclic;
    j["contractible"] = r.contractible;
    j["split_minimal"] = to_string(r.split_minimal);
    j["pure_minimal"] = to_string(r.pure_minimal);
    j["minimal"] = to_string(r.minimal);
    if (r.minimal_witness)
        j["minimal_witness"] = homotopy_to_json(*r.minimal_witness);
    else
        j["minimal_witness"] = nullptr;
    j["notes"] = r.notes;
    return j;
}

Json trace_to_json(const ReductionTrace& t) {
    Json j;
    Json moves = Json::array();
    for (const ReductionMove& m : t.moves) {
        Json mv;
        mv["degree"] = m.degree;
        mv["component"] = m.component;
        mv["source_change"] = matrix_to_json(m.source_change);
        mv["source_change_inv"] = matrix_to_json(m.source_change_inv);
        mv["target_change"] = matrix_to_json(m.target_change);
        mv["target_change_inv"] = matrix_to_json(m.target_change_inv);
        Json pivots = Json::array();
        for (auto [r, c] : m.pivots) pivots.push_back(Json::array({r, c}));
        mv["pivots"] = pivots;
        moves.push_back(mv);
    }
    j["moves"] = moves;
    j["split_part"] = complex_to_json(t.split_part);
    j["reduced"] = complex_to_json(t.reduced);
    Json iso_to = Json::object(), iso_from = Json::object();
    for (const auto& [deg, m] : t.iso_to_sum) iso_to[std::to_string(deg)] = matrix_to_json(m);
    for (const auto& [deg, m] : t.iso_from_sum)
        iso_from[std::to_string(deg)] = matrix_to_json(m);
    j["iso_to_sum"] = iso_to;
    j["iso_from_sum"] = iso_from;
    return j;
}

Json dimension_to_json(const DimensionResult& d) {
    Json j;
    switch (d.status) {
        case DimensionResult::Status::finite:
            j["status"] = "finite";
            j["value"] = d.value;
            break;
        case DimensionResult::Status::infinite:
            j["status"] = "infinite";
            break;
        case DimensionResult::Status::exceeds_cutoff:
            j["status"] = "exceeds_cutoff";
            break;
        case DimensionResult::Status::zero_object:
            j["status"] = "zero_object";
            break;
    }
    j["notes"] = d.notes;
    return j;
}

}  // namespace puremin
