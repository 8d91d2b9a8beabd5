#include "lbcm/report.hpp"

#include <algorithm>

namespace lbcm {

bool CheckReport::passed() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const CheckEntry& e) { return e.pass; });
}

void CheckReport::begin(std::string id, std::string law) {
  cur_id_ = std::move(id);
  cur_law_ = std::move(law);
  cases_ = 0;
  failures_ = 0;
}

void CheckReport::fail(std::vector<int> witness, std::string residual, std::string context) {
  ++failures_;
  if (failures_ > kMaxWitnesses) return;
  CheckEntry e;
  e.id = cur_id_;
  e.law = cur_law_;
  e.pass = false;
  e.witness = std::move(witness);
  e.context = std::move(context);
  e.residual = std::move(residual);
  entries_.push_back(std::move(e));
}

void CheckReport::finish() {
  if (failures_ == 0) {
    CheckEntry e;
    e.id = cur_id_;
    e.law = cur_law_;
    e.residual = "0";
    e.cases = cases_;
    entries_.push_back(std::move(e));
  } else {
    // Failure entries for this law carry the total count on the last one.
    for (auto it = entries_.rbegin(); it != entries_.rend() && it->id == cur_id_; ++it) {
      it->cases = cases_;
    }
  }
  cur_id_.clear();
  cur_law_.clear();
}

void CheckReport::add(std::string id, std::string law, bool pass, std::string residual,
                      std::vector<int> witness, std::string context) {
  CheckEntry e;
  e.id = std::move(id);
  e.law = std::move(law);
  e.pass = pass;
  e.residual = pass ? "0" : (residual.empty() ? "failed" : std::move(residual));
  e.witness = std::move(witness);
  e.context = std::move(context);
  e.cases = 1;
  entries_.push_back(std::move(e));
}

void CheckReport::absorb(const CheckReport& other, const std::string& stage) {
  for (auto e : other.entries_) {
    e.id = stage + "/" + e.id;
    entries_.push_back(std::move(e));
  }
}

}  // namespace lbcm
