#ifndef SHAPO_EMIT_HPP
#define SHAPO_EMIT_HPP

/**
 * Canonical JSON emission (schema_version 1) and a human-oriented text
 * formatter that spots q-integer factors.  JSON is the machine format:
 * scalars are emitted as {num, den} monomial lists [coeff, e_q, e_z1, ...]
 * with coefficients as exact decimal strings.
 */

#include <json.hpp>

#include "shapo/linalg.hpp"
#include "shapo/module.hpp"

namespace shapo {

using ejson = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

ejson scalar_json(const Scalar& s, int rank);
ejson sparse_mat_json(const SparseMat& m, int rank);
ejson dense_mat_json(const DenseMat& m, int rank);
ejson weight_json(const Weight& w);

// Text form with [n]_q factors recognized in numerator and denominator.
std::string pretty_scalar(const Scalar& s);

} // namespace shapo

#endif
