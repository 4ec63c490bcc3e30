#ifndef AIA_IO_HH_
#define AIA_IO_HH_

/** \file
 * \brief
 * Text formats for automata and traces, and DOT export.
 *
 * A model file starts with `ia NAME` or `aia NAME` and continues with
 * `inputs`, `outputs`, an optional `states` line, an `init` line and one line
 * per transition:
 *
 *     aia spec
 *     inputs a b
 *     outputs x
 *     init q0
 *     q0 ?a -> q0 & (q1 | q2)
 *     q1 !x -> T
 *
 * In `aia` files omitted input transitions mean `T` and omitted output
 * transitions mean `F`; in `ia` files an omitted transition is the empty set.
 * Names that are not plain identifiers are written in double quotes. `#`
 * starts a comment that runs to the end of the line.
 */

#include <string>
#include <string_view>
#include <variant>

#include "aia/aia.hh"
#include "aia/alphabet.hh"
#include "aia/ia.hh"
#include "aia/testing.hh"

namespace aia {

using Model = std::variant<InterfaceAutomaton, AlternatingIA>;

/// Throws ParseError with the position of the offending token.
Model parse_model(std::string_view text);
InterfaceAutomaton parse_ia(std::string_view text);
AlternatingIA parse_aia(std::string_view text);

/// Parses an expression over the states of `s` (`T`, `F`, names, `&`, `|`, parentheses).
Config parse_config(std::string_view text, const AlternatingIA& s);

/**
 * Whitespace-separated `?in`, `!out` and, in last position only, `~in`.
 * Throws ParseError on a malformed or unknown token.
 */
FTrace parse_trace(std::string_view text, const Alphabet& alphabet);

/// Canonical text; parse_model(print_model(m)) == m.
std::string print_model(const Model& m);
std::string print_model(const InterfaceAutomaton& i);
std::string print_model(const AlternatingIA& s);

/// Conjunctive targets go through a junction point; top targets of outputs get their own node.
std::string to_dot(const AlternatingIA& s);
/// With `verdicts` set, states named pass and fail are drawn as double circles.
std::string to_dot(const InterfaceAutomaton& i, bool verdicts = false);
std::string to_dot(const Tester& t);

/// Throws Error if the file cannot be read.
std::string read_file(const std::string& path);
/// Throws Error if the file cannot be written.
void write_file(const std::string& path, std::string_view contents);
Model load_model(const std::string& path);

} // namespace aia

#endif // AIA_IO_HH_
