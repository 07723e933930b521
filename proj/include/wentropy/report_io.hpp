#pragma once

#include <string>
#include <vector>

#include <wentropy/bounds.hpp>
#include <wentropy/characterization.hpp>
#include <wentropy/entropies.hpp>
#include <wentropy/identities.hpp>

namespace wentropy {

/// CSV with header row "t,value,converged"; numbers carry 17 significant
/// digits so parsing the text back reproduces the doubles exactly.
std::string to_csv(const EntropyCurve& curve);

// JSON serializations.  Numbers are printed with 17 significant digits and
// non-finite values become null.  Key order, layout, and formatting are
// fixed, so identical inputs serialize to identical bytes.
std::string to_json(const EntropyCurve& curve);
std::string to_json(const IdentityReport& report);
std::string to_json(const std::vector<IdentityReport>& reports);
std::string to_json(const BoundReport& report);
std::string to_json(const std::vector<BoundReport>& reports);
std::string to_json(const ClassificationReport& report);
std::string to_json(const ReconstructionReport& report);

}  // namespace wentropy
