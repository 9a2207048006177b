#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "koopnet/affine_wavelet.hpp"
#include "koopnet/function_space.hpp"
#include "koopnet/group.hpp"

namespace koopnet::io {

/// Table part of an action file, before it is bound to a group.
struct ActionTable {
  std::size_t num_points = 0;
  std::vector<std::vector<Point>> table;
  Point origin = 0;
};

struct GroupDocument {
  std::shared_ptr<const FiniteGroup> group;
  std::optional<ActionTable> action;
};

/// {"order": n, "cayley": [[...]], "action": {"num_points": m, "table": [[...]]}}.
/// Shape errors throw ParseError with a JSON-pointer location; axiom
/// violations propagate from build_from_cayley / GAction.
GroupDocument parse_group_document(std::string_view text);
GroupDocument load_group_file(const std::filesystem::path& path);

/// {"num_points": m, "table": [[...]], "origin": o}. "origin" is optional.
ActionTable parse_action_document(std::string_view text);

GAction bind_action(std::shared_ptr<const FiniteGroup> group, const ActionTable& table);

/// {"re": [...], "im": [...]}; "im" may be omitted.
FieldFunction parse_function_document(std::string_view text, std::shared_ptr<const InvariantMeasure> measure);

/// {"dx": d, "re": [...], "im": [...]}, optional "x0" (default: centred on 0).
affine::SampledSignal parse_signal_document(std::string_view text);
affine::SampledSignal load_signal_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace koopnet::io
