#include "igs/hierarchy.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace igs {
namespace {

using Kind = HierarchyError::Kind;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\n'))
    s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

class NameTable {
 public:
  VertexId Intern(std::string_view name) {
    auto [it, inserted] =
        ids_.emplace(std::string(name), static_cast<VertexId>(names_.size()));
    if (inserted) {
      names_.emplace_back(name);
      parents_.push_back(kNoVertex);
    }
    return it->second;
  }

  std::vector<std::string> names_;
  std::vector<VertexId> parents_;

 private:
  std::unordered_map<std::string, VertexId> ids_;
};

Hierarchy LoadEdgeList(std::istream& in) {
  NameTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto tab = view.find('\t');
    if (tab == std::string_view::npos) {
      table.Intern(view);
      continue;
    }
    std::string_view parent = Trim(view.substr(0, tab));
    std::string_view child = Trim(view.substr(tab + 1));
    if (parent.empty() || child.empty() ||
        child.find('\t') != std::string_view::npos) {
      throw HierarchyError(Kind::kParse, "malformed edge on line " +
                                             std::to_string(line_no));
    }
    const VertexId p = table.Intern(parent);
    const VertexId c = table.Intern(child);
    if (table.parents_[c] != kNoVertex) {
      throw HierarchyError(Kind::kDuplicateParent,
                           "duplicate parent for '" + std::string(child) +
                               "' on line " + std::to_string(line_no));
    }
    if (p == c) {
      throw HierarchyError(Kind::kCycle,
                           "self loop on '" + std::string(child) + "'");
    }
    table.parents_[c] = p;
  }
  std::vector<std::string> labels = table.names_;
  return Hierarchy::FromParents(std::move(table.names_), std::move(labels),
                                table.parents_);
}

Hierarchy LoadJson(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw HierarchyError(Kind::kParse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw HierarchyError(Kind::kParse, "expected an object with a \"nodes\" array");
  }
  const auto& nodes = doc["nodes"];
  if (nodes.empty()) throw HierarchyError(Kind::kEmptyInput, "empty hierarchy");

  std::vector<std::string> names;
  std::vector<std::string> labels;
  std::unordered_map<std::string, VertexId> ids;
  for (const auto& node : nodes) {
    if (!node.is_object() || !node.contains("id") || !node["id"].is_string()) {
      throw HierarchyError(Kind::kParse, "node without a string \"id\"");
    }
    std::string id = node["id"].get<std::string>();
    if (!ids.emplace(id, static_cast<VertexId>(names.size())).second) {
      throw HierarchyError(Kind::kDuplicateVertex, "duplicate node id '" + id + "'");
    }
    labels.push_back(node.contains("label") && node["label"].is_string()
                         ? node["label"].get<std::string>()
                         : id);
    names.push_back(std::move(id));
  }
  std::vector<VertexId> parents(names.size(), kNoVertex);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    if (!node.contains("parent") || node["parent"].is_null()) continue;
    if (!node["parent"].is_string()) {
      throw HierarchyError(Kind::kParse, "non-string parent for '" + names[i] + "'");
    }
    const auto it = ids.find(node["parent"].get<std::string>());
    if (it == ids.end()) {
      throw HierarchyError(Kind::kDanglingReference,
                           "node '" + names[i] + "' references unknown parent '" +
                               node["parent"].get<std::string>() + "'");
    }
    parents[i] = it->second;
  }
  return Hierarchy::FromParents(std::move(names), std::move(labels), parents);
}

}  // namespace

Hierarchy Hierarchy::FromParents(std::vector<std::string> names,
                                 std::vector<std::string> labels,
                                 const std::vector<VertexId>& parents) {
  const int n = static_cast<int>(parents.size());
  if (n == 0) throw HierarchyError(Kind::kEmptyInput, "empty hierarchy");
  if (static_cast<int>(names.size()) != n || static_cast<int>(labels.size()) != n) {
    throw std::invalid_argument("names/labels/parents size mismatch");
  }

  Hierarchy h;
  VertexId root = kNoVertex;
  std::vector<int> degree(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    const VertexId p = parents[v];
    if (p == kNoVertex) {
      if (root != kNoVertex) {
        throw HierarchyError(Kind::kMultipleRoots,
                             "multiple roots: '" + names[root] + "' and '" +
                                 names[v] + "'");
      }
      root = v;
      continue;
    }
    if (p < 0 || p >= n) {
      throw HierarchyError(Kind::kDanglingReference,
                           "vertex '" + names[v] + "' has an out-of-range parent");
    }
    ++degree[p];
  }
  if (root == kNoVertex) {
    throw HierarchyError(Kind::kCycle, "no root: every vertex has a parent (cycle)");
  }

  h.child_begin_.assign(n + 1, 0);
  for (VertexId v = 0; v < n; ++v) h.child_begin_[v + 1] = h.child_begin_[v] + degree[v];
  h.child_list_.resize(n - 1);
  {
    std::vector<int> fill(h.child_begin_.begin(), h.child_begin_.end() - 1);
    for (VertexId v = 0; v < n; ++v) {
      if (parents[v] != kNoVertex) h.child_list_[fill[parents[v]]++] = v;
    }
  }

  h.parent_ = parents;
  h.depth_.assign(n, 0);
  h.tin_.assign(n, -1);
  h.tout_.assign(n, -1);
  h.preorder_.reserve(n);

  // Iterative pre-order DFS; children visited in input order.
  std::vector<std::pair<VertexId, int>> stack;
  stack.emplace_back(root, 0);
  h.tin_[root] = 0;
  h.preorder_.push_back(root);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const int begin = h.child_begin_[v];
    const int end = h.child_begin_[v + 1];
    if (begin + next < end) {
      const VertexId c = h.child_list_[begin + next];
      ++next;
      h.depth_[c] = h.depth_[v] + 1;
      h.tin_[c] = static_cast<int>(h.preorder_.size());
      h.preorder_.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      h.tout_[v] = static_cast<int>(h.preorder_.size());
      stack.pop_back();
    }
  }
  if (static_cast<int>(h.preorder_.size()) != n) {
    for (VertexId v = 0; v < n; ++v) {
      if (h.tin_[v] < 0) {
        throw HierarchyError(Kind::kCycle, "cycle detected through vertex '" +
                                               names[v] + "'");
      }
    }
  }

  h.root_ = root;
  h.height_ = *std::max_element(h.depth_.begin(), h.depth_.end());
  h.max_out_degree_ = *std::max_element(degree.begin(), degree.end());
  h.names_ = std::move(names);
  h.labels_ = std::move(labels);
  for (VertexId v = 0; v < n; ++v) {
    if (!h.by_name_.emplace(h.names_[v], v).second) {
      throw HierarchyError(Kind::kDuplicateVertex,
                           "duplicate vertex name '" + h.names_[v] + "'");
    }
    h.by_label_.emplace(h.labels_[v], v);
  }
  return h;
}

Hierarchy Hierarchy::Load(std::istream& in, HierarchyFormat format) {
  return format == HierarchyFormat::kJson ? LoadJson(in) : LoadEdgeList(in);
}

Hierarchy Hierarchy::Parse(std::string_view text) {
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);
  std::istringstream in{std::string(text)};
  const bool json = !trimmed.empty() && trimmed.front() == '{';
  return Load(in, json ? HierarchyFormat::kJson : HierarchyFormat::kEdgeList);
}

Hierarchy Hierarchy::LoadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw HierarchyError(Kind::kIo, "cannot open hierarchy file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

std::vector<VertexId> Hierarchy::RootPath(VertexId v) const {
  std::vector<VertexId> path(depth_[v] + 1);
  for (VertexId u = v; u != kNoVertex; u = parent_[u]) path[depth_[u]] = u;
  return path;
}

std::vector<std::string> Hierarchy::RootPathLabels(VertexId v) const {
  std::vector<std::string> out;
  for (VertexId u : RootPath(v)) out.push_back(labels_[u]);
  return out;
}

std::optional<VertexId> Hierarchy::Find(std::string_view key) const {
  const std::string k(key);
  if (auto it = by_name_.find(k); it != by_name_.end()) return it->second;
  if (auto it = by_label_.find(k); it != by_label_.end()) return it->second;
  return std::nullopt;
}

VertexId Hierarchy::FindOrThrow(std::string_view key) const {
  if (auto v = Find(key)) return *v;
  throw HierarchyError(Kind::kDanglingReference,
                       "unknown vertex '" + std::string(key) + "'");
}

std::uint64_t Hierarchy::ContentHash() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash ^= c;
      hash *= 0x100000001b3ULL;
    }
  };
  for (VertexId v = 0; v < size(); ++v) {
    mix(names_[v]);
    mix("\x1f");
    mix(parent_[v] == kNoVertex ? std::string_view{} : std::string_view(names_[parent_[v]]));
    mix("\x1e");
  }
  return hash;
}

void Hierarchy::WriteEdgeList(std::ostream& out) const {
  if (size() == 1) {
    out << names_[root_] << '\n';
    return;
  }
  for (VertexId v : preorder_) {
    for (VertexId c : children(v)) out << names_[v] << '\t' << names_[c] << '\n';
  }
}

}  // namespace igs
