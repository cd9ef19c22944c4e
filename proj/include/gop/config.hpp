#pragma once

// Operator config documents: one JSON document per operator, schema = 1,
// complex numbers as [re, im] pairs.  Parse errors carry the offending key.

#include <string>

#include "gop/operator_model.hpp"

namespace gop {

ConicalGOperator parse_operator_config(const std::string& text);
ConicalGOperator load_operator_config(const std::string& path);
std::string serialize_operator_config(const ConicalGOperator& op);

}  // namespace gop
