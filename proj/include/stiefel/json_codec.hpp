#pragma once

// JSON encoding of exact integers. Values that fit in a signed 64-bit integer
// are written as JSON numbers; larger magnitudes are written as decimal
// strings. Decoders accept either form.

#include <json.hpp>

#include "stiefel/lattice.hpp"

namespace stiefel::json_codec {

using json = nlohmann::json;

json encode(const lattice::Integer& x);
json encode(const lattice::Vector& v);
json encode(const std::vector<lattice::Vector>& rows);
json encode(const lattice::IntMatrix& m);
json encode(const lattice::Rational& q);  // "p/q" string, or an integer when q = 1

lattice::Integer decode_integer(const json& j);
lattice::Vector decode_vector(const json& j);
lattice::IntMatrix decode_matrix(const json& j, std::size_t cols_if_empty = 0);

}  // namespace stiefel::json_codec
