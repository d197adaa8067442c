#ifndef FLOWCAP_SERIALIZE_HPP
#define FLOWCAP_SERIALIZE_HPP

#include <string>

#include "flowcap/flow.hpp"

namespace flowcap {

// JSON documents; matrices are flattened row-major. The schema is documented
// in docs/formats.md and pinned by round-trip tests. indent < 0 emits the
// compact single-line form.

std::string field_to_json(const VectorField& f, int indent = -1);
VectorField field_from_json(const std::string& text);

std::string program_to_json(const FlowProgram& p, int indent = -1);
FlowProgram program_from_json(const std::string& text);

std::string box_to_json(const Box& b, int indent = -1);
Box box_from_json(const std::string& text);

}  // namespace flowcap

#endif
