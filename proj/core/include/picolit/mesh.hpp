#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace picolit {

/// Default concept granularity: keep only the first tree-number segment.
inline constexpr std::size_t kDefaultGranularity = 1;

/// A MeSH tree number such as Z01.107.567.176. The first segment is one
/// uppercase letter followed by digits; the rest are digit strings.
class MeshTreeNumber {
  public:
    const std::vector<std::string>& segments() const noexcept { return m_segments; }
    std::size_t depth() const noexcept { return m_segments.size(); }
    /// Category letter, e.g. 'Z'.
    char category() const noexcept { return m_segments.front().front(); }
    std::string str() const;

    friend bool operator==(const MeshTreeNumber&, const MeshTreeNumber&) = default;
    friend auto operator<=>(const MeshTreeNumber&, const MeshTreeNumber&) = default;

  private:
    friend MeshTreeNumber parse_tree_number(std::string_view text);
    std::vector<std::string> m_segments;
};

/// Throws ParseError naming the offending segment.
MeshTreeNumber parse_tree_number(std::string_view text);

/// First `granularity` segments joined by '.'; the whole code when shorter.
/// Throws std::invalid_argument when granularity is 0.
std::string truncate(const MeshTreeNumber& tree, std::size_t granularity);

/// Display label for a truncated concept code: the MeSH heading for known
/// first-level codes (Z01 -> "Geographic Locations"), otherwise the code.
std::string concept_label(std::string_view code);

/// Name of one of the 16 MeSH categories by letter; empty when unknown.
std::string_view category_name(char letter) noexcept;

}  // namespace picolit
