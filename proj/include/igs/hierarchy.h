#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace igs {

// Dense vertex index in [0, n). Assigned in input order at load time.
using VertexId = std::int32_t;

inline constexpr VertexId kNoVertex = -1;

// Distance between two vertices that are not ancestor-related.
inline constexpr int kInfiniteDistance = std::numeric_limits<int>::max();

class HierarchyError : public std::runtime_error {
 public:
  enum class Kind {
    kEmptyInput,
    kParse,
    kCycle,
    kMultipleRoots,
    kDuplicateParent,
    kDanglingReference,
    kDuplicateVertex,
    kIo,
  };

  HierarchyError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

enum class HierarchyFormat { kEdgeList, kJson };

// Immutable rooted tree. Ancestor tests use pre-order interval labels:
// u reaches v iff tin(u) <= tin(v) < tout(u).
class Hierarchy {
 public:
  // `parents[v]` is the parent of v or kNoVertex for the root. `names` are the
  // lookup keys (unique), `labels` the display strings (may repeat).
  static Hierarchy FromParents(std::vector<std::string> names,
                               std::vector<std::string> labels,
                               const std::vector<VertexId>& parents);

  static Hierarchy Load(std::istream& in, HierarchyFormat format);
  static Hierarchy LoadFile(const std::string& path);
  static Hierarchy Parse(std::string_view text);  // sniffs JSON vs edge list

  int size() const { return static_cast<int>(parent_.size()); }
  VertexId root() const { return root_; }
  VertexId parent(VertexId v) const { return parent_[v]; }
  std::span<const VertexId> children(VertexId v) const {
    return {child_list_.data() + child_begin_[v],
            child_list_.data() + child_begin_[v + 1]};
  }
  int depth(VertexId v) const { return depth_[v]; }
  int height() const { return height_; }
  int max_out_degree() const { return max_out_degree_; }
  int euler_in(VertexId v) const { return tin_[v]; }
  int euler_out(VertexId v) const { return tout_[v]; }
  const std::string& label(VertexId v) const { return labels_[v]; }
  const std::string& name(VertexId v) const { return names_[v]; }

  // Vertices in pre-order; the subtree of v is the contiguous range
  // [euler_in(v), euler_out(v)).
  std::span<const VertexId> preorder() const { return preorder_; }

  bool IsAncestor(VertexId u, VertexId v) const {
    return tin_[u] <= tin_[v] && tin_[v] < tout_[u];
  }

  int Distance(VertexId u, VertexId v) const {
    return IsAncestor(u, v) ? depth_[v] - depth_[u] : kInfiniteDistance;
  }

  std::span<const VertexId> SubtreeVertices(VertexId v) const {
    return std::span<const VertexId>(preorder_).subspan(tin_[v],
                                                        tout_[v] - tin_[v]);
  }
  int SubtreeSize(VertexId v) const { return tout_[v] - tin_[v]; }

  // Root first, v last.
  std::vector<VertexId> RootPath(VertexId v) const;

  // Labels of RootPath(v).
  std::vector<std::string> RootPathLabels(VertexId v) const;

  // Resolves a vertex by name, then by label.
  std::optional<VertexId> Find(std::string_view key) const;
  VertexId FindOrThrow(std::string_view key) const;

  // FNV-1a over names and parent links; stable across runs and platforms.
  std::uint64_t ContentHash() const;

  void WriteEdgeList(std::ostream& out) const;

 private:
  Hierarchy() = default;

  std::vector<std::string> names_;
  std::vector<std::string> labels_;
  std::vector<VertexId> parent_;
  std::vector<int> child_begin_;
  std::vector<VertexId> child_list_;
  std::vector<int> depth_;
  std::vector<int> tin_;
  std::vector<int> tout_;
  std::vector<VertexId> preorder_;
  std::unordered_map<std::string, VertexId> by_name_;
  std::unordered_map<std::string, VertexId> by_label_;
  VertexId root_ = kNoVertex;
  int height_ = 0;
  int max_out_degree_ = 0;
};

}  // namespace igs
