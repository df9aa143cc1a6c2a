#pragma once

#include <string>

#include "ljmse/syntax.hpp"

namespace ljmse {

// Concrete syntax, parseable back by parse(); parse(print(T)) is T up to
// alpha (it is in fact syntactically identical).
std::string print_expr(const ast::Expr& e);
std::string print_term(const ast::TermPtr& t);
std::string print_coterm(const ast::CoTermPtr& l);
std::string print_command(const ast::CommandPtr& c);

}  // namespace ljmse
