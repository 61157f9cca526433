#pragma once

#include <functional>
#include <map>
#include <string>

#include "stacky/sectors.hpp"

namespace stacky {

// Grammar (whitespace-insensitive):
//   stack   := bg(degree=<n>; gens=<cycles>|...; field=<fd>) | mu(<l>)
//            | wps(<a0>,<a1>,...) | prod(<stack>,<stack>,...)
//   field   := Q | split | U(<e>;<g1>,<g2>,...)
// Syntax errors carry the byte offset of the offending character.
StackDescriptor parse_stack_spec(const std::string& text, const Bounds& bounds = {});

// Loader for `file:<path>` raising terms; receives the path, returns the
// label -> value table (the CLI reads JSON files through this hook).
using RaisingFileLoader = std::function<std::map<std::string, Rat>(const std::string&)>;

// Raising-function specs:
//   rspec := term ('+' term)*          (one term per product factor)
//   term  := builtin:index | builtin:quasitoric | builtin:zero
//          | constant:<rat> | table:{<label>:<rat>,...}
//          | file:<path> | boxplus(<rspec>,<rspec>,...)
RaisingFunction parse_raising_spec(const StackDescriptor& stack, const std::string& text,
                                   const RaisingFileLoader& loader = nullptr);

}  // namespace stacky
