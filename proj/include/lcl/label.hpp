#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace lcl {

class Alphabet;

// An output/input label: a base symbol, a marked-ball symbol (compiled
// problems), or a canonically sorted duplicate-free set of labels (power-set
// alphabets). Immutable; equality is rendering equality.
class Label {
public:
  enum class Kind { Base, Ball, Set };

  Label() = default;
  static Label base(const std::string& symbol);
  static Label ball(const std::string& text);  // "@<port>:(...)" rendering
  // Sorts and dedups elements under the canonical order induced by
  // `base_order` (may be null: base labels then order by symbol).
  static Label set(std::vector<Label> elements, const Alphabet* base_order);

  Kind kind() const { return node_->kind; }
  bool is_set() const { return node_->kind == Kind::Set; }
  const std::string& text() const { return node_->text; }
  const std::vector<Label>& elements() const { return node_->elements; }

  bool valid() const { return node_ != nullptr; }
  bool operator==(const Label& o) const { return text() == o.text(); }
  bool operator!=(const Label& o) const { return !(*this == o); }

private:
  struct Node {
    Kind kind;
    std::string text;
    std::vector<Label> elements;  // Set only
  };
  explicit Label(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct LabelHash {
  std::size_t operator()(const Label& l) const { return std::hash<std::string>()(l.text()); }
};

// Ordered, duplicate-free label sequence; declaration order is the canonical
// total order on base labels.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Label> labels);

  const std::vector<Label>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool contains(const Label& l) const { return rank_.count(l.text()) > 0; }
  // Looks a label up by its rendering; nullptr when absent.
  const Label* find_text(const std::string& text) const {
    auto it = rank_.find(text);
    return it == rank_.end() ? nullptr : &labels_[it->second];
  }
  // -1 when absent.
  int rank_of(const Label& l) const {
    auto it = rank_.find(l.text());
    return it == rank_.end() ? -1 : it->second;
  }
  bool operator==(const Alphabet& o) const;

private:
  std::vector<Label> labels_;
  std::unordered_map<std::string, int> rank_;
};

// Canonical strict total order: Base < Ball < Set across kinds; bases by
// declaration rank in `base` (falling back to symbol order when absent or no
// alphabet given); balls by rendering; sets by cardinality, then rendering.
struct LabelOrder {
  const Alphabet* base = nullptr;

  bool less(const Label& a, const Label& b) const;
  bool operator()(const Label& a, const Label& b) const { return less(a, b); }
};

// Sorts under `ord` (stable canonical form for multisets).
void sort_labels(std::vector<Label>& labels, const LabelOrder& ord);

// Renders a space-separated label sequence.
std::string render_labels(const std::vector<Label>& labels, const std::string& sep = " ");

}  // namespace lcl
