#pragma once

#include <json.hpp>

#include "mimo3way/allocation.hpp"
#include "mimo3way/channel_model.hpp"
#include "mimo3way/dof_bounds.hpp"
#include "mimo3way/linear_program.hpp"
#include "mimo3way/rate_simulator.hpp"
#include "mimo3way/zf_schemes.hpp"

namespace mimo3way {

// Insertion-ordered so output is stable and reads top-down.
using Json = nlohmann::ordered_json;

// Rationals are always "p/q" strings.
Json to_json(const Rational& r);
Json to_json(const AntennaConfig& cfg);
Json to_json(const AntennaSplit& split);
Json to_json(const MessageSet& msgs);
Json to_json(const BoundReport& report);
Json to_json(const LinearProgram& lp);
Json to_json(const AllocationResult& result);
Json to_json(const SchemeInstance& scheme);       // dimensions and labels only, no matrices
Json to_json(const VerificationReport& report);
Json to_json(const SlopeEstimate& estimate);

const char* messages_name(MessageConfig config) noexcept;   // "unicast" / "broadcast"

}  // namespace mimo3way
