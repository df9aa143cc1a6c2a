#pragma once

#include <string>

#include "ljmse/reduction.hpp"
#include "ljmse/syntax.hpp"
#include "ljmse/target.hpp"

namespace ljmse {

// Stable JSON encodings. Types are embedded in their concrete syntax
// ("X->X", "forall X.X"); expressions are tagged objects:
//   {"k":"var","x":..} {"k":"lam","x":..,"body":..} {"k":"coerce","cmd":..}
//   {"k":"tylam","X":..,"body":..} {"k":"ann","t":..,"ty":..}
//   {"k":"nil"} {"k":"cons","head":..,"tail":..} {"k":"tycons","ty":..,"tail":..}
//   {"k":"sel","x":..,"cmd":..} {"k":"cut","t":..,"l":..}
// target terms: {"k":"var"/"lam"/"app","f":..,"a":..}/"tylam"/"tyapp"
std::string expr_to_json(const ast::Expr& e);
ast::Expr expr_from_json(const std::string& json, Level level = Level::Second);

std::string lam_to_json(const LamTermPtr& t);
LamTermPtr lam_from_json(const std::string& json, Level level = Level::Second);

// {"initial":..,"steps":[{"rule":..,"pos":[..],"to":..},..],"status":..}
std::string trace_to_json(const Trace& tr);

}  // namespace ljmse
