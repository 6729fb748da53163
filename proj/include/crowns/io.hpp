#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "crowns/poset.hpp"

namespace crowns {

/**
 * Poset text format, one poset per file:
 *
 *   # comment
 *   points <n>
 *   label <id> <name>        (optional, any number)
 *   edge <id> <id>           (meaning first < second; any acyclic relation)
 *
 * The relation is closed transitively on load. Throws ParseError with the
 * offending line number.
 */
Poset parse_poset(std::istream& in);
Poset parse_poset_text(const std::string& text);
Poset load_poset_file(const std::string& path);

// Cover edges only; parses back to the same order.
std::string serialize_poset(const Poset& p);

struct OrderMap; // retract.hpp

// "map <point> -> <point>" lines plus a "verified: true|false" trailer.
std::string serialize_order_map(const OrderMap& f, bool verified);

} // namespace crowns
