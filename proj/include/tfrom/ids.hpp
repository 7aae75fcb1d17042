#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>

namespace tfrom {

/// Index into one of the three universes of an instance (customers, items,
/// providers). The tag keeps the three from being mixed up.
template <class Tag>
class Id {
 public:
  constexpr Id() = default;
  constexpr explicit Id(std::size_t value) : value_(static_cast<std::uint32_t>(value)) {}

  constexpr std::size_t index() const noexcept { return value_; }

  friend constexpr auto operator<=>(Id, Id) = default;
  friend std::ostream& operator<<(std::ostream& os, Id id) { return os << id.value_; }

 private:
  std::uint32_t value_ = 0;
};

using CustomerId = Id<struct CustomerTag>;
using ItemId = Id<struct ItemTag>;
using ProviderId = Id<struct ProviderTag>;

}  // namespace tfrom

template <class Tag>
struct std::hash<tfrom::Id<Tag>> {
  std::size_t operator()(tfrom::Id<Tag> id) const noexcept { return std::hash<std::size_t>{}(id.index()); }
};
