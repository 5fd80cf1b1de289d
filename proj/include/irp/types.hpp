#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace irp {

struct TypeTag {
  std::string name;

  auto operator<=>(const TypeTag &) const = default;
};

namespace types {
inline const TypeTag element{"element"};
inline const TypeTag position{"position"};
inline const TypeTag object{"object"};
inline const TypeTag base{"base"};
inline const TypeTag cube{"cube"};
inline const TypeTag roof{"roof"};
} // namespace types

// Rooted type tree. Children keep their insertion order, which is what the
// canonical PDDL printer walks.
class TypeHierarchy {
public:
  explicit TypeHierarchy(TypeTag root = types::element);

  // ELEMENT -> {POSITION, OBJECT}, OBJECT -> {BASE, CUBE, ROOF}.
  static TypeHierarchy builtin();

  void add(const TypeTag &type, const TypeTag &parent);

  bool contains(const TypeTag &type) const;
  const TypeTag &root() const { return root_; }
  std::optional<TypeTag> parent(const TypeTag &type) const;
  std::vector<TypeTag> children(const TypeTag &type) const;
  // Breadth-first from the root.
  std::vector<TypeTag> ordered() const;
  std::vector<TypeTag> leaves() const;
  size_t size() const { return parent_.size(); }

  // Reflexive: true iff `ancestor` lies on the parent chain of `type`.
  bool is_subtype(const TypeTag &type, const TypeTag &ancestor) const;

  // Structural equality (same parent relation); insertion order is ignored.
  bool operator==(const TypeHierarchy &other) const {
    return root_ == other.root_ && parent_ == other.parent_;
  }

private:
  void require(const TypeTag &type) const;

  TypeTag root_;
  std::map<TypeTag, std::optional<TypeTag>> parent_;
  std::vector<TypeTag> insertion_;
};

} // namespace irp
