#include "resdist/wellformed.hpp"

#include <functional>
#include <map>

namespace resdist {

namespace {

void collect_calls(const Exp& e, std::vector<const ExpNode::Call*>& out) {
  if (as_a(e)) return;
  if (auto* c = as_call(e)) {
    out.push_back(c);
    for (const auto& arg : c->args) collect_calls(arg, out);
    return;
  }
  if (auto* i = as_if(e)) {
    if (auto* q = std::get_if<BExpNode::Eq>(&i->cond->v)) collect_calls(q->rhs, out);
    collect_calls(i->then_e, out);
    collect_calls(i->else_e, out);
    return;
  }
  collect_calls(as_argdev(e)->update, out);
}

bool bexp_has_call(const BExp& b) {
  if (auto* q = std::get_if<BExpNode::Eq>(&b->v)) {
    std::vector<const ExpNode::Call*> calls;
    collect_calls(q->rhs, calls);
    return !calls.empty();
  }
  if (auto* n = std::get_if<BExpNode::Not>(&b->v)) return bexp_has_call(n->inner);
  if (auto* a = std::get_if<BExpNode::And>(&b->v)) return bexp_has_call(a->lhs) || bexp_has_call(a->rhs);
  return false;
}

}  // namespace

std::vector<Diagnostic> check_well_formed(const Program& p) {
  std::vector<Diagnostic> ds;
  std::map<std::string, const FuncDef*> by_name;
  for (const auto& f : p.funcs) by_name[f.name] = &f;

  // Mutual recursion: any cycle in the call graph that is not a self-loop
  // defeats the Def-3 enumeration, whatever order the definitions are in.
  {
    std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::string> stack;
    std::function<void(const FuncDef&)> dfs = [&](const FuncDef& f) {
      state[f.name] = 1;
      stack.push_back(f.name);
      std::vector<const ExpNode::Call*> calls;
      collect_calls(f.body, calls);
      for (auto* c : calls) {
        if (c->fname == f.name) continue;
        auto it = by_name.find(c->fname);
        if (it == by_name.end()) continue;
        int s = state[c->fname];
        if (s == 1) {
          std::string cycle;
          for (auto sit = std::find(stack.begin(), stack.end(), c->fname); sit != stack.end(); ++sit)
            cycle += (cycle.empty() ? "" : " -> ") + *sit;
          cycle += " -> " + c->fname;
          ds.push_back({ErrKind::MutualRecursion, f.name, "call cycle " + cycle});
        } else if (s == 0) {
          dfs(*it->second);
        }
      }
      stack.pop_back();
      state[f.name] = 2;
    };
    for (const auto& f : p.funcs)
      if (state[f.name] == 0) dfs(f);
  }
  if (!ds.empty()) return ds;

  for (const auto& f : p.funcs) {
    // Where self-calls are allowed: only as the else-branch of a top-level if.
    const Exp* tail = nullptr;
    BExp guard;
    Exp base;
    if (auto* i = as_if(f.body)) {
      if (auto* c = as_call(i->else_e); c && c->fname == f.name) {
        tail = &i->else_e;
        guard = i->cond;
        base = i->then_e;
      }
    }

    auto check_no_self = [&](const Exp& e, const char* where) {
      std::vector<const ExpNode::Call*> calls;
      collect_calls(e, calls);
      for (auto* c : calls)
        if (c->fname == f.name)
          ds.push_back({ErrKind::NonTailRecursion, f.name,
                        std::string("self-call in ") + where + " is not the tail position of shape 1"});
    };
    auto check_lower = [&](const Exp& e, const char* where) {
      std::vector<const ExpNode::Call*> calls;
      collect_calls(e, calls);
      for (auto* c : calls) {
        if (c->fname == f.name) continue;
        auto it = by_name.find(c->fname);
        if (it == by_name.end()) {
          ds.push_back({ErrKind::UndefinedName, f.name, "call to undefined function '" + c->fname + "'"});
          continue;
        }
        if (it->second->params.size() != c->args.size())
          ds.push_back({ErrKind::ArityMismatch, f.name,
                        "call to '" + c->fname + "' with " + std::to_string(c->args.size()) +
                            " arguments, expected " + std::to_string(it->second->params.size())});
        if (it->second->index >= f.index)
          ds.push_back({ErrKind::ForwardCall, f.name,
                        "call to '" + c->fname + "' (index " + std::to_string(it->second->index) +
                            ") from index " + std::to_string(f.index) + " breaks the enumeration"});
      }
    };

    if (tail) {
      // shape 1
      if (bexp_has_call(guard))
        ds.push_back({ErrKind::NonTailRecursion, f.name, "shape-1 guard contains a function call"});
      if (as_call(*tail)->args.size() != f.params.size())
        ds.push_back({ErrKind::ArityMismatch, f.name, "self-call arity differs from definition"});
      check_no_self(base, "the base branch");
      check_lower(base, "base");
      for (const auto& arg : as_call(*tail)->args) {
        check_no_self(arg, "a recursive argument");
        check_lower(arg, "recursive argument");
      }
    } else {
      // shape 2
      check_no_self(f.body, "the body");
      check_lower(f.body, "body");
    }
  }
  return ds;
}

void ensure_well_formed(const Program& p) {
  auto ds = check_well_formed(p);
  if (!ds.empty()) fail(ds.front().kind, format_diagnostics(ds));
}

std::optional<RecShape> recursion_shape(const FuncDef& f) {
  if (auto* i = as_if(f.body))
    if (auto* c = as_call(i->else_e); c && c->fname == f.name)
      return RecShape{i->cond, i->then_e, c->args};
  return std::nullopt;
}

}  // namespace resdist
