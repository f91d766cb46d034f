#ifndef RIESZCAP_SET_IO_HPP
#define RIESZCAP_SET_IO_HPP

// JSON ingestion of set descriptions. Schema:
//   {"type":"ball","dim":3,"center":[0,0,0],"radius":1.0}
//   {"type":"sphere","dim":3,"center":[0,0,0],"radius":1.0}
//   {"type":"interval","a":-1,"b":1}
//   {"type":"box","lo":[...],"hi":[...]}
//   {"type":"points","coords":[[...],...]}
//   {"type":"union","parts":[...]}

#include <string>

#include "rieszcap/geometry.hpp"

namespace rieszcap {

// Parses a JSON document into a SetSpec. Throws std::invalid_argument on
// malformed documents or invariant violations.
SetSpec set_spec_from_json(const std::string& text);

// Reads the file and parses it. Throws std::runtime_error when unreadable.
SetSpec set_spec_from_file(const std::string& path);

// Serializes back to the schema above (round-trips with set_spec_from_json).
std::string set_spec_to_json(const SetSpec& spec);

}  // namespace rieszcap

#endif
