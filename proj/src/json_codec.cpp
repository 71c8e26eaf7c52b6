#include "stiefel/json_codec.hpp"

#include <cstdint>
#include <limits>

#include "stiefel/error.hpp"

namespace stiefel::json_codec {

json encode(const lattice::Integer& x) {
    if (mpz_fits_slong_p(x.get_mpz_t()) && sizeof(long) >= sizeof(std::int64_t))
        return json(static_cast<std::int64_t>(x.get_si()));
    return json(x.get_str());
}

json encode(const lattice::Vector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(encode(x));
    return out;
}

json encode(const std::vector<lattice::Vector>& rows) {
    json out = json::array();
    for (const auto& r : rows) out.push_back(encode(r));
    return out;
}

json encode(const lattice::IntMatrix& m) { return encode(m.to_rows()); }

json encode(const lattice::Rational& q) {
    if (q.get_den() == 1) return encode(lattice::Integer(q.get_num()));
    return json(q.get_str());
}

lattice::Integer decode_integer(const json& j) {
    if (j.is_number_integer()) return lattice::Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        lattice::Integer x;
        if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("malformed integer string");
        return x;
    }
    throw InputError("expected an integer");
}

lattice::Vector decode_vector(const json& j) {
    if (!j.is_array()) throw InputError("expected an integer array");
    lattice::Vector v;
    for (const auto& e : j) v.push_back(decode_integer(e));
    return v;
}

lattice::IntMatrix decode_matrix(const json& j, std::size_t cols_if_empty) {
    if (!j.is_array()) throw InputError("expected a matrix (array of rows)");
    std::vector<lattice::Vector> rows;
    for (const auto& r : j) rows.push_back(decode_vector(r));
    if (rows.empty()) return lattice::IntMatrix(0, cols_if_empty);
    return lattice::IntMatrix::from_rows(rows);
}

}  // namespace stiefel::json_codec
