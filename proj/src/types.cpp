#include "irp/types.hpp"

#include "irp/error.hpp"

#include <deque>

namespace irp {

TypeHierarchy::TypeHierarchy(TypeTag root) : root_(std::move(root)) {
  parent_.emplace(root_, std::nullopt);
  insertion_.push_back(root_);
}

TypeHierarchy TypeHierarchy::builtin() {
  TypeHierarchy h(types::element);
  h.add(types::position, types::element);
  h.add(types::object, types::element);
  h.add(types::base, types::object);
  h.add(types::cube, types::object);
  h.add(types::roof, types::object);
  return h;
}

void TypeHierarchy::add(const TypeTag &type, const TypeTag &parent) {
  require(parent);
  if (type.name.empty())
    throw Error(ErrorCode::InvalidArgument, "empty type name");
  if (parent_.count(type))
    throw Error(ErrorCode::DuplicateName, "type '" + type.name + "' already declared");
  parent_.emplace(type, parent);
  insertion_.push_back(type);
}

bool TypeHierarchy::contains(const TypeTag &type) const {
  return parent_.count(type) != 0;
}

void TypeHierarchy::require(const TypeTag &type) const {
  if (!contains(type))
    throw Error(ErrorCode::UnknownType, "type '" + type.name + "' is not registered");
}

std::optional<TypeTag> TypeHierarchy::parent(const TypeTag &type) const {
  require(type);
  return parent_.at(type);
}

std::vector<TypeTag> TypeHierarchy::children(const TypeTag &type) const {
  std::vector<TypeTag> out;
  for (const auto &t : insertion_) {
    const auto &p = parent_.at(t);
    if (p && *p == type)
      out.push_back(t);
  }
  return out;
}

std::vector<TypeTag> TypeHierarchy::ordered() const {
  std::vector<TypeTag> out;
  std::deque<TypeTag> queue{root_};
  while (!queue.empty()) {
    TypeTag t = queue.front();
    queue.pop_front();
    out.push_back(t);
    for (auto &c : children(t))
      queue.push_back(std::move(c));
  }
  return out;
}

std::vector<TypeTag> TypeHierarchy::leaves() const {
  std::vector<TypeTag> out;
  for (const auto &t : ordered())
    if (children(t).empty())
      out.push_back(t);
  return out;
}

bool TypeHierarchy::is_subtype(const TypeTag &type, const TypeTag &ancestor) const {
  require(type);
  require(ancestor);
  std::optional<TypeTag> cur = type;
  while (cur) {
    if (*cur == ancestor)
      return true;
    cur = parent_.at(*cur);
  }
  return false;
}

} // namespace irp
