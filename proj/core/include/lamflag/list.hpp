#pragma once

#include <memory>
#include <vector>

namespace lamflag {

// Persistent singly linked list; head is the most recently pushed element.
template <typename T>
class List {
  struct Node {
    T head;
    std::shared_ptr<const Node> tail;
    size_t len;
  };
  std::shared_ptr<const Node> node_;

  explicit List(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

public:
  List() = default;

  bool empty() const { return !node_; }
  size_t size() const { return node_ ? node_->len : 0; }
  const T& head() const { return node_->head; }
  List tail() const { return List(node_->tail); }

  List push(T v) const {
    auto n = std::make_shared<Node>(Node{std::move(v), node_, size() + 1});
    return List(std::shared_ptr<const Node>(std::move(n)));
  }

  std::vector<T> to_vector() const {
    std::vector<T> out;
    out.reserve(size());
    for (auto n = node_; n; n = n->tail) out.push_back(n->head);
    return out;
  }

  static List from_vector(const std::vector<T>& v) {
    List l;
    for (auto it = v.rbegin(); it != v.rend(); ++it) l = l.push(*it);
    return l;
  }
};

} // namespace lamflag
