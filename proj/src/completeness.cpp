#include "mbc/completeness.hpp"

#include <sstream>

namespace mbc {

std::string AbstractState::to_string() const {
    if (is_void) return "Void";
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, value] : queries) {
        if (!first) os << ", ";
        first = false;
        os << name << " = " << value.to_string();
    }
    return "(" + os.str() + ")";
}

namespace {

class AbstractView final : public StateView {
public:
    AbstractView(const std::vector<ObjectId>& ids, std::vector<const AbstractState*>& states)
        : ids_(ids), states_(states) {}

    ObjectId id(Role role) const override {
        const auto k = static_cast<std::size_t>(role.index);
        if (k >= ids_.size()) throw ModelError("role does not exist");
        return ids_[k];
    }

    ModelValue query(Role role, std::string_view q) const override {
        const auto k = static_cast<std::size_t>(role.index);
        const AbstractState* s = k < states_.size() ? states_[k] : nullptr;
        if (s == nullptr || s->is_void) throw ModelError("model query '" + std::string(q) + "' unavailable");
        auto it = s->queries.find(q);
        if (it == s->queries.end()) throw ModelError("abstract state lacks query '" + std::string(q) + "'");
        return it->second;
    }

private:
    const std::vector<ObjectId>& ids_;
    std::vector<const AbstractState*>& states_;
};

bool holds_quietly(const Predicate& p, const PredicateEnv& env) {
    try {
        return p(env);
    } catch (const std::exception&) {
        return false;
    }
}

struct Slot {
    bool is_result = false;
    Role role;
    const std::vector<AbstractState>* candidates = nullptr;
};

class Probe {
public:
    Probe(const RoutineSpec& routine, const ProbeDomain& domain) : routine_(routine), domain_(domain) {}

    ProbeResult run() {
        const std::size_t nargs = routine_.params.size();
        if (domain_.args.size() != nargs) throw ConfigError("probe domain arity does not match routine");
        if (domain_.target_pre.empty()) throw ConfigError("probe domain has no pre-states");
        for (std::size_t k = 0; k < nargs; ++k) {
            const auto& a = domain_.args[k];
            if (a.kind == Param::Kind::reference ? a.pre.empty() : a.values.empty()) {
                throw ConfigError("probe domain for argument '" + routine_.params[k].name + "' is empty");
            }
        }
        ids_.assign(nargs + 1, void_id);
        pre_states_.assign(nargs + 1, nullptr);
        post_states_.assign(nargs + 1, nullptr);
        args_.assign(nargs, ModelValue());
        enumerate_pre(0);
        if (!result_.witness) result_.complete = true;
        return std::move(result_);
    }

private:
    // Walks the cartesian product of target and argument pre-states.
    void enumerate_pre(std::size_t slot) {
        if (result_.witness) return;
        const std::size_t nargs = routine_.params.size();
        if (slot == 0) {
            for (const auto& s : domain_.target_pre) {
                pre_states_[0] = &s;
                ids_[0] = ObjectId{1};
                enumerate_pre(1);
                if (result_.witness) return;
            }
            return;
        }
        if (slot > nargs) {
            check_pre_state();
            return;
        }
        const auto& a = domain_.args[slot - 1];
        if (a.kind == Param::Kind::reference) {
            for (const auto& s : a.pre) {
                pre_states_[slot] = &s;
                ids_[slot] = s.is_void ? void_id : ObjectId{slot + 1};
                args_[slot - 1] = ModelValue::object(ids_[slot]);
                enumerate_pre(slot + 1);
                if (result_.witness) return;
            }
        } else {
            pre_states_[slot] = nullptr;
            ids_[slot] = void_id;
            for (const auto& v : a.values) {
                args_[slot - 1] = v;
                enumerate_pre(slot + 1);
                if (result_.witness) return;
            }
        }
    }

    void check_pre_state() {
        AbstractView pre(ids_, pre_states_);
        PredicateEnv env(nullptr, pre, args_, nullptr);
        for (const auto& p : routine_.preconditions) {
            if (!holds_quietly(p->holds, env)) return;
        }
        ++result_.pre_states_checked;

        // Post slots: reference arguments, then the target, then Result.
        slots_.clear();
        for (std::size_t k = 1; k <= routine_.params.size(); ++k) {
            if (routine_.params[k - 1].kind != Param::Kind::reference) continue;
            slots_.push_back(Slot{false, Role::arg(static_cast<int>(k)), &domain_.args[k - 1].post});
        }
        slots_.push_back(Slot{false, Role::target(), &domain_.target_post});
        const bool has_result = routine_.result != ResultKind::none;
        if (has_result) slots_.push_back(Slot{true, Role::target(), nullptr});

        slot_preds_.assign(slots_.size(), {});
        auto slot_of = [&](const std::optional<Role>& role) {
            if (!role) return slots_.size() - 1;
            for (std::size_t i = 0; i < slots_.size(); ++i) {
                if (!slots_[i].is_result && slots_[i].role == *role) return i;
            }
            return slots_.size() - 1;
        };
        for (const auto& p : routine_.postconditions) slot_preds_[slot_of(p.post_role)].push_back(&p);
        for (const auto& p : routine_.frame) slot_preds_[slot_of(p.post_role)].push_back(&p);

        admitted_.clear();
        for (std::size_t i = 0; i < post_states_.size(); ++i) post_states_[i] = nullptr;
        // Integer roles have no model; Void roles stay Void.
        for (std::size_t k = 0; k < pre_states_.size(); ++k) {
            if (pre_states_[k] && pre_states_[k]->is_void) post_states_[k] = pre_states_[k];
        }
        result_value_.reset();
        enumerate_post(0, pre);

        if (admitted_.size() != 1) {
            ProbeWitness w;
            w.pre_state = describe(pre_states_, nullptr);
            w.post_states = admitted_;
            result_.witness = std::move(w);
        }
    }

    void enumerate_post(std::size_t i, const AbstractView& pre) {
        if (admitted_.size() >= 2) return;
        if (i == slots_.size()) {
            admitted_.push_back(describe(post_states_, result_value_ ? &*result_value_ : nullptr));
            return;
        }
        const Slot& slot = slots_[i];
        AbstractView post(ids_, post_states_);
        PredicateEnv env(&pre, post, args_, &result_value_);
        auto level_holds = [&] {
            for (const Postcondition* p : slot_preds_[i]) {
                if (!holds_quietly(p->holds, env)) return false;
            }
            return true;
        };
        if (slot.is_result) {
            for (const auto& v : domain_.results) {
                result_value_ = v;
                if (level_holds()) enumerate_post(i + 1, pre);
                if (admitted_.size() >= 2) break;
            }
            result_value_.reset();
            return;
        }
        const auto k = static_cast<std::size_t>(slot.role.index);
        if (pre_states_[k] && pre_states_[k]->is_void) {
            if (level_holds()) enumerate_post(i + 1, pre);
            return;
        }
        for (const auto& s : *slot.candidates) {
            post_states_[k] = &s;
            if (level_holds()) enumerate_post(i + 1, pre);
            if (admitted_.size() >= 2) break;
        }
        post_states_[k] = nullptr;
    }

    std::string describe(const std::vector<const AbstractState*>& states, const ModelValue* result) const {
        std::ostringstream os;
        for (std::size_t k = 0; k < states.size(); ++k) {
            if (k > 0) os << "; ";
            os << routine_.role_name(Role{static_cast<int>(k)}) << ": ";
            if (states[k]) {
                os << states[k]->to_string();
            } else {
                os << args_[k - 1].to_string();
            }
        }
        if (result) os << "; Result: " << result->to_string();
        return os.str();
    }

    const RoutineSpec& routine_;
    const ProbeDomain& domain_;
    ProbeResult result_;
    std::vector<ObjectId> ids_;
    std::vector<const AbstractState*> pre_states_;
    std::vector<const AbstractState*> post_states_;
    std::vector<ModelValue> args_;
    std::optional<ModelValue> result_value_;
    std::vector<Slot> slots_;
    std::vector<std::vector<const Postcondition*>> slot_preds_;
    std::vector<std::string> admitted_;
};

} // namespace

ProbeResult completeness_probe(const ClassSpec& cls, const RoutineSpec& routine, const ProbeDomain& domain) {
    if (cls.routine(routine.name) == nullptr) {
        throw ConfigError(cls.name + " has no routine " + routine.name);
    }
    return Probe(routine, domain).run();
}

} // namespace mbc
