#pragma once

// Structured pass/fail reports for the verification routines.  Every check
// contributes a named entry; failures carry a human-readable witness so a
// red result can be traced to concrete cells or points.

#include <string>
#include <utility>
#include <vector>

namespace orthocell {

struct CheckEntry {
  std::string name;
  bool pass = false;
  std::string witness;  // empty on pass, concrete counterexample on fail
};

class VerificationReport {
 public:
  void add(std::string name, bool pass, std::string witness = "") {
    entries_.push_back({std::move(name), pass, std::move(witness)});
  }

  void add_pass(std::string name) { add(std::move(name), true); }

  void add_fail(std::string name, std::string witness) {
    add(std::move(name), false, std::move(witness));
  }

  void merge(const VerificationReport& other, const std::string& prefix = "") {
    for (const CheckEntry& e : other.entries_)
      entries_.push_back({prefix + e.name, e.pass, e.witness});
  }

  bool passed() const {
    for (const CheckEntry& e : entries_)
      if (!e.pass) return false;
    return true;
  }

  std::size_t size() const { return entries_.size(); }
  const std::vector<CheckEntry>& entries() const { return entries_; }

  std::vector<CheckEntry> failures() const {
    std::vector<CheckEntry> out;
    for (const CheckEntry& e : entries_)
      if (!e.pass) out.push_back(e);
    return out;
  }

  std::string summary() const {
    std::size_t bad = 0;
    for (const CheckEntry& e : entries_)
      if (!e.pass) ++bad;
    std::string s = std::to_string(entries_.size() - bad) + "/" +
                    std::to_string(entries_.size()) + " checks passed";
    for (const CheckEntry& e : entries_) {
      if (e.pass) continue;
      s += "\n  FAIL " + e.name;
      if (!e.witness.empty()) s += ": " + e.witness;
    }
    return s;
  }

 private:
  std::vector<CheckEntry> entries_;
};

}  // namespace orthocell
