#pragma once

#include <stdexcept>
#include <string>

#include "ljmse/syntax.hpp"

namespace ljmse {

struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::size_t pos)
      : std::runtime_error(std::move(msg)), position(pos) {}
  std::size_t position;
};

// parse src as the requested syntactic class; rejects /\X., <B>:: and
// (t : A) unless level is Second
ast::Expr parse(const std::string& src, ast::ExprClass cls, Level level = Level::Prop);
ast::TermPtr parse_term(const std::string& src, Level level = Level::Prop);
ast::CoTermPtr parse_coterm(const std::string& src, Level level = Level::Prop);
ast::CommandPtr parse_command(const std::string& src, Level level = Level::Prop);

TypePtr parse_type(const std::string& src, Level level = Level::Second);

// "x:X->Y, f:X->X" (empty string: empty context)
Ctx parse_ctx(const std::string& src, Level level = Level::Second);

}  // namespace ljmse
