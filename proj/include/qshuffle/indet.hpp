#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

namespace qshuffle {

// Indeterminate alphabet. Canonical order: q, then arrow parameters by arrow
// id, then sigma/tau/w/x/z each by (vertex, index), then the series variable.
enum class VarKind : uint8_t {
  Q = 0,
  Arrow = 1,
  Sigma = 2,
  Tau = 3,
  W = 4,
  X = 5,
  Z = 6,
  Series = 7,
};

struct Indet {
  VarKind kind = VarKind::Q;
  std::string id;  // arrow id for Arrow, vertex id for Sigma/Tau/W/X/Z
  int index = 0;   // 1-based for vertex-indexed kinds

  friend bool operator==(const Indet& a, const Indet& b) {
    return a.kind == b.kind && a.id == b.id && a.index == b.index;
  }
  friend bool operator<(const Indet& a, const Indet& b) {
    return std::tie(a.kind, a.id, a.index) < std::tie(b.kind, b.id, b.index);
  }

  std::string name() const {
    switch (kind) {
      case VarKind::Q: return "q";
      case VarKind::Arrow: return "t_" + id;
      case VarKind::Sigma: return "sigma[" + id + "," + std::to_string(index) + "]";
      case VarKind::Tau: return "tau[" + id + "," + std::to_string(index) + "]";
      case VarKind::W: return "w[" + id + "," + std::to_string(index) + "]";
      case VarKind::X: return "x[" + id + "," + std::to_string(index) + "]";
      case VarKind::Z: return "z[" + id + "," + std::to_string(index) + "]";
      case VarKind::Series: return "x";
    }
    return "?";
  }
};

using Sym = int32_t;

// Process-wide interner. Entries are never removed; deque keeps references
// stable so concurrent readers of already-interned symbols need no lock.
class SymTable {
 public:
  static SymTable& instance() {
    static SymTable t;
    return t;
  }

  Sym intern(const Indet& v) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ids_.find(v);
    if (it != ids_.end()) return it->second;
    Sym s = static_cast<Sym>(table_.size());
    table_.push_back(v);
    ids_.emplace(v, s);
    return s;
  }

  const Indet& at(Sym s) const { return table_[static_cast<size_t>(s)]; }

  bool less(Sym a, Sym b) const {
    if (a == b) return false;
    return at(a) < at(b);
  }

 private:
  SymTable() = default;
  std::mutex mu_;
  std::deque<Indet> table_;
  std::map<Indet, Sym> ids_;
};

inline Sym sym(const Indet& v) { return SymTable::instance().intern(v); }
inline const Indet& indet(Sym s) { return SymTable::instance().at(s); }
inline bool sym_less(Sym a, Sym b) { return SymTable::instance().less(a, b); }

inline Sym sym_q() { return sym({VarKind::Q, "", 0}); }
inline Sym sym_arrow(const std::string& arrow_id) { return sym({VarKind::Arrow, arrow_id, 0}); }
inline Sym sym_sigma(const std::string& vertex, int s) { return sym({VarKind::Sigma, vertex, s}); }
inline Sym sym_tau(const std::string& vertex, int t) { return sym({VarKind::Tau, vertex, t}); }
inline Sym sym_w(const std::string& vertex, int a) { return sym({VarKind::W, vertex, a}); }
inline Sym sym_x(const std::string& vertex, int a) { return sym({VarKind::X, vertex, a}); }
inline Sym sym_z(const std::string& vertex, int a) { return sym({VarKind::Z, vertex, a}); }
inline Sym sym_series() { return sym({VarKind::Series, "", 0}); }

}  // namespace qshuffle
