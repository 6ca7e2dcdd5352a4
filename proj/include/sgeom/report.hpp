#pragma once

#include <string>
#include <vector>

namespace sgeom {

struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
};

// one line per identity: "PASS name" or "FAIL name: detail"
class Report {
  public:
    void add(std::string name, bool ok, std::string detail = "") {
        checks_.push_back({std::move(name), ok, std::move(detail)});
    }
    void merge(const Report &o) { checks_.insert(checks_.end(), o.checks_.begin(), o.checks_.end()); }
    void merge(const Report &o, const std::string &prefix) {
        for (auto c : o.checks_) {
            c.name = prefix + c.name;
            checks_.push_back(std::move(c));
        }
    }
    bool passed() const {
        for (auto &c : checks_)
            if (!c.ok)
                return false;
        return true;
    }
    const std::vector<Check> &checks() const { return checks_; }
    const Check *find(const std::string &name) const {
        for (auto &c : checks_)
            if (c.name == name)
                return &c;
        return nullptr;
    }
    std::vector<const Check *> failures() const {
        std::vector<const Check *> out;
        for (auto &c : checks_)
            if (!c.ok)
                out.push_back(&c);
        return out;
    }
    std::string render() const {
        std::string out;
        for (auto &c : checks_) {
            out += c.ok ? "PASS " : "FAIL ";
            out += c.name;
            if (!c.detail.empty())
                out += ": " + c.detail;
            out += "\n";
        }
        return out;
    }

  private:
    std::vector<Check> checks_;
};

} // namespace sgeom
