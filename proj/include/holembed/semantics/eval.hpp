#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "holembed/semantics/standard.hpp"
#include "holembed/stt/term.hpp"

namespace holembed::semantics {

// Compiled form of a closed boolean term over a fixed carrier assignment:
// variables become stack positions, uninterpreted constants become slot
// reads, the primitives become dedicated short-circuiting nodes. Quantifiers
// iterate dense indices, so compilation fixes the carrier sizes; recompile
// per carrier tuple.
class CompiledFormula {
 public:
  struct Node {
    enum class Op : uint8_t {
      Slot,       // idx: slot index
      BVar,       // idx: absolute stack depth
      Lit,        // a: literal value
      Not,        // c0
      OrElse,     // c0 || c1
      EqVal,      // c0 == c1
      ForallLam,  // a: domain card; c0: body with one more binding
      ForallVal,  // a: domain card; c0: predicate value (codomain o)
      Apply,      // pows: codomain powers; c0: function, c1: argument
      MakeFn      // a: domain card, b: codomain card; c0: body
    };
    Op op;
    uint32_t idx = 0;
    uint64_t a = 0, b = 0;
    std::vector<uint64_t> pows;
    std::unique_ptr<Node> c0, c1;
  };

  // slots: the assignable constants in declaration order (name, type).
  static CompiledFormula compile(const stt::TermPtr& t,
                                 const std::vector<std::pair<std::string, stt::TypePtr>>& slots,
                                 const StandardModel& M) {
    CompiledFormula f;
    f.reads_.assign(slots.size(), false);
    Builder b{slots, M, &f.reads_, {}};
    f.root_ = b.go(t);
    f.max_slot_ = -1;
    for (size_t i = 0; i < f.reads_.size(); ++i)
      if (f.reads_[i]) {
        f.slots_used_.push_back(i);
        f.max_slot_ = static_cast<int>(i);
      }
    return f;
  }

  // slot_vals must cover every slot index this formula reads. ops counts
  // node visits, for budgets and stats.
  bool eval(const std::vector<uint64_t>& slot_vals, uint64_t& ops) const {
    Ctx c{slot_vals.data(), {}, &ops};
    return run(root_.get(), c) == 1;
  }

  const std::vector<size_t>& slots_used() const { return slots_used_; }
  int max_slot() const { return max_slot_; }

 private:
  struct Ctx {
    const uint64_t* slots;
    std::vector<uint64_t> stack;
    uint64_t* ops;
  };

  static uint64_t run(const Node* n, Ctx& c) {
    ++*c.ops;
    using Op = Node::Op;
    switch (n->op) {
      case Op::Slot: return c.slots[n->idx];
      case Op::BVar: return c.stack[n->idx];
      case Op::Lit: return n->a;
      case Op::Not: return 1 - run(n->c0.get(), c);
      case Op::OrElse:
        if (run(n->c0.get(), c)) return 1;
        return run(n->c1.get(), c);
      case Op::EqVal: return run(n->c0.get(), c) == run(n->c1.get(), c);
      case Op::ForallLam: {
        c.stack.push_back(0);
        uint64_t out = 1;
        for (uint64_t x = 0; x < n->a; ++x) {
          c.stack.back() = x;
          if (!run(n->c0.get(), c)) { out = 0; break; }
        }
        c.stack.pop_back();
        return out;
      }
      case Op::ForallVal: {
        uint64_t g = run(n->c0.get(), c);
        for (uint64_t x = 0; x < n->a; ++x)
          if (!((g >> x) & 1)) return 0;
        return 1;
      }
      case Op::Apply: {
        uint64_t f = run(n->c0.get(), c);
        uint64_t x = run(n->c1.get(), c);
        uint64_t p = n->pows[x];
        return (f / p) % n->pows[1];
      }
      case Op::MakeFn: {
        c.stack.push_back(0);
        unsigned __int128 acc = 0;
        uint64_t scale = 1;
        for (uint64_t x = 0; x < n->a; ++x) {
          c.stack.back() = x;
          acc += static_cast<unsigned __int128>(run(n->c0.get(), c)) * scale;
          if (x + 1 < n->a) scale *= n->b;
        }
        c.stack.pop_back();
        return static_cast<uint64_t>(acc);
      }
    }
    throw SemanticsError("unhandled opcode");
  }

  struct Builder {
    const std::vector<std::pair<std::string, stt::TypePtr>>& slots;
    const StandardModel& M;
    std::vector<bool>* reads;
    std::vector<std::string> binders;

    std::unique_ptr<Node> mk(Node::Op op) {
      auto n = std::make_unique<Node>();
      n->op = op;
      return n;
    }

    std::unique_ptr<Node> go(const stt::TermPtr& t) {
      using stt::TermKind;
      switch (t->kind) {
        case TermKind::Var: {
          for (size_t d = binders.size(); d-- > 0;) {
            if (binders[d] == t->name) {
              auto n = mk(Node::Op::BVar);
              n->idx = static_cast<uint32_t>(d);
              return n;
            }
          }
          throw SemanticsError("free variable '" + t->name + "' in compiled formula");
        }
        case TermKind::Const: {
          for (size_t i = 0; i < slots.size(); ++i) {
            if (slots[i].first == t->name) {
              (*reads)[i] = true;
              auto n = mk(Node::Op::Slot);
              n->idx = static_cast<uint32_t>(i);
              return n;
            }
          }
          throw SemanticsError("constant '" + t->name +
                               "' has no slot (definitions must be unfolded first)");
        }
        case TermKind::Neg:
        case TermKind::Or:
        case TermKind::Eq:
        case TermKind::Pi: {
          auto n = mk(Node::Op::Lit);
          n->a = eval_stt(M, t); // tiny primitive tables; guarded inside
          return n;
        }
        case TermKind::Lam: {
          auto n = mk(Node::Op::MakeFn);
          n->a = type_card(t->ty, M);
          n->b = type_card(annotated_type(t->child0), M);
          checked_pow(n->b, n->a);
          binders.push_back(t->name);
          n->c0 = go(t->child0);
          binders.pop_back();
          return n;
        }
        case TermKind::App: {
          const stt::TermPtr& f = t->child0;
          const stt::TermPtr& a = t->child1;
          if (f->kind == TermKind::Neg) {
            auto n = mk(Node::Op::Not);
            n->c0 = go(a);
            return n;
          }
          if (f->kind == TermKind::Pi) {
            uint64_t card = type_card(f->ty, M);
            if (a->kind == TermKind::Lam) {
              auto n = mk(Node::Op::ForallLam);
              n->a = card;
              binders.push_back(a->name);
              n->c0 = go(a->child0);
              binders.pop_back();
              return n;
            }
            if (card > 62)
              throw SemanticsError("quantified domain too large for value form");
            auto n = mk(Node::Op::ForallVal);
            n->a = card;
            n->c0 = go(a);
            return n;
          }
          if (f->kind == TermKind::App) {
            const stt::TermPtr& ff = f->child0;
            if (ff->kind == TermKind::Or) {
              auto n = mk(Node::Op::OrElse);
              n->c0 = go(f->child1);
              n->c1 = go(a);
              return n;
            }
            if (ff->kind == TermKind::Eq) {
              auto n = mk(Node::Op::EqVal);
              n->c0 = go(f->child1);
              n->c1 = go(a);
              return n;
            }
          }
          auto n = mk(Node::Op::Apply);
          uint64_t A = type_card(annotated_type(f)->domain(), M);
          uint64_t B = type_card(annotated_type(t), M);
          n->pows.resize(A ? A : 1);
          uint64_t p = 1;
          for (uint64_t x = 0; x < A; ++x) {
            n->pows[x] = p;
            if (x + 1 < A) p *= B;
          }
          if (A < 2) n->pows.resize(2, B == 0 ? 1 : B);
          else if (n->pows.size() < 2) n->pows.push_back(B);
          n->c0 = go(f);
          n->c1 = go(a);
          return n;
        }
      }
      throw SemanticsError("unhandled term kind in compilation");
    }
  };

  std::unique_ptr<Node> root_;
  std::vector<bool> reads_;
  std::vector<size_t> slots_used_;
  int max_slot_ = -1;
};

} // namespace holembed::semantics
