// Check reports produced by every axiom checker.

#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace lbcm {

struct CheckEntry {
  std::string id;        // e.g. "jacobi", "CA:4"
  std::string law;       // human-readable statement of the identity
  bool pass = true;
  std::vector<int> witness;  // 1-based basis indices; empty for summary entries
  std::string context;   // multiplier or argument roles, e.g. "f=x1"
  std::string residual;  // canonical rendering; "0" when passing
  std::size_t cases = 0; // instances evaluated (summary entries only)
};

/// 0-based indices to a 1-based witness.
inline std::vector<int> witness(std::initializer_list<std::size_t> idx) {
  std::vector<int> out;
  for (auto i : idx) out.push_back(static_cast<int>(i) + 1);
  return out;
}

class CheckReport {
 public:
  CheckReport() = default;
  explicit CheckReport(std::string structure) : structure_(std::move(structure)) {}

  const std::string& structure() const { return structure_; }
  const std::vector<CheckEntry>& entries() const { return entries_; }
  bool passed() const;

  /// Starts a law. Failures are added with fail(); close with finish().
  void begin(std::string id, std::string law);
  /// Records one evaluated instance of the current law.
  void count() { ++cases_; }
  void fail(std::vector<int> witness, std::string residual, std::string context = {});
  void finish();

  /// Convenience: a single boolean fact.
  void add(std::string id, std::string law, bool pass, std::string residual = {},
           std::vector<int> witness = {}, std::string context = {});

  /// Appends another report's entries with ids prefixed by `stage/`.
  void absorb(const CheckReport& other, const std::string& stage);

  /// Failure lists are truncated beyond this many witnesses per law.
  static constexpr std::size_t kMaxWitnesses = 16;

 private:
  std::string structure_;
  std::vector<CheckEntry> entries_;
  std::string cur_id_;
  std::string cur_law_;
  std::size_t cases_ = 0;
  std::size_t failures_ = 0;
};

}  // namespace lbcm
