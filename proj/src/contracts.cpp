#include "mbc/contracts.hpp"

#include <algorithm>
#include <set>

namespace mbc {

std::string to_string(SpecLevel level) { return level == SpecLevel::weak ? "weak" : "strong"; }

SpecLevel parse_spec_level(std::string_view text) {
    if (text == "weak") return SpecLevel::weak;
    if (text == "strong") return SpecLevel::strong;
    throw ConfigError("unknown spec level '" + std::string(text) + "' (expected weak|strong)");
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::precondition: return "precondition";
    case ViolationKind::invariant_entry: return "invariant_entry";
    case ViolationKind::invariant_exit: return "invariant_exit";
    case ViolationKind::postcondition: return "postcondition";
    case ViolationKind::frame: return "frame";
    case ViolationKind::model_eval_error: return "model_eval_error";
    }
    return "?";
}

std::string to_string(Blame blame) { return blame == Blame::caller ? "caller" : "callee"; }

// ---------------------------------------------------------------------------
// PredicateEnv / InvariantContext

ModelValue PredicateEnv::old(Role role, std::string_view query) const {
    if (before_ == nullptr) throw ModelError("old used outside a postcondition");
    return before_->query(role, query);
}

const ModelValue& PredicateEnv::arg(int k) const {
    if (k < 1 || static_cast<std::size_t>(k) > args_.size()) {
        throw ModelError("argument " + std::to_string(k) + " does not exist");
    }
    return args_[static_cast<std::size_t>(k - 1)];
}

const ModelValue& PredicateEnv::result() const {
    if (result_ == nullptr || !result_->has_value()) throw ModelError("Result is not available");
    return **result_;
}

ModelValue InvariantContext::query(std::string_view name) const { return engine_.evaluate(self_, name); }

ModelValue InvariantContext::query_of(const Object& other, std::string_view name) const {
    return engine_.evaluate(other, name);
}

// ---------------------------------------------------------------------------
// Specification data model

std::string RoutineSpec::role_name(Role role) const {
    if (role.is_target()) return "Current";
    if (role.index < 1 || static_cast<std::size_t>(role.index) > params.size()) {
        return "arg" + std::to_string(role.index);
    }
    return params[static_cast<std::size_t>(role.index - 1)].name;
}

const RoutineSpec* ClassSpec::routine(std::string_view name) const {
    for (const auto& r : routines) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

RoutineSpec* ClassSpec::routine(std::string_view name) {
    for (auto& r : routines) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

const ModelQuery* ClassSpec::query(std::string_view name) const {
    for (const auto& q : model) {
        if (q.name == name) return &q;
    }
    return nullptr;
}

std::vector<Postcondition> derive_frame_postconditions(const RoutineSpec& routine, const ClassSpec& cls,
                                                       std::span<const ClassSpec* const> arg_classes) {
    if (!routine.modify) return {};
    const auto& modify = *routine.modify;

    auto class_of = [&](Role role) -> const ClassSpec* {
        if (role.is_target()) return &cls;
        const auto k = static_cast<std::size_t>(role.index);
        if (k < 1 || k > routine.params.size() || routine.params[k - 1].kind != Param::Kind::reference) {
            return nullptr;
        }
        return k - 1 < arg_classes.size() ? arg_classes[k - 1] : nullptr;
    };

    for (const auto& m : modify) {
        const ClassSpec* c = class_of(m.role);
        if (c == nullptr) {
            throw SpecDefinitionError(cls.name + "." + routine.name + ": modify names role " +
                                      std::to_string(m.role.index) + " which is not a reference argument");
        }
        if (c->query(m.query) == nullptr) {
            throw SpecDefinitionError(cls.name + "." + routine.name + ": modify names unknown query '" + m.query +
                                      "' of " + c->name);
        }
    }

    std::vector<Role> roles{Role::target()};
    for (std::size_t k = 1; k <= routine.params.size(); ++k) {
        if (routine.params[k - 1].kind == Param::Kind::reference) roles.push_back(Role::arg(static_cast<int>(k)));
    }

    std::vector<Postcondition> frame;
    for (Role role : roles) {
        const ClassSpec* c = class_of(role);
        if (c == nullptr) continue;
        for (const auto& q : c->model) {
            const bool listed = std::any_of(modify.begin(), modify.end(), [&](const ModifyEntry& m) {
                return m.role == role && m.query == q.name;
            });
            if (listed) continue;
            const std::string prefix = role.is_target() ? std::string() : routine.role_name(role) + ".";
            Postcondition p;
            p.name = prefix + q.name + " = old " + prefix + q.name;
            p.derived_frame = true;
            p.post_role = role;
            p.holds = [role, query = q.name, modify](const PredicateEnv& env) {
                if (env.is_void(role)) return true;
                const ObjectId id = env.id(role);
                // The same object may legitimately change through another role.
                for (const auto& m : modify) {
                    if (m.query == query && env.id(m.role) == id) return true;
                }
                return env.model(role, query) == env.old(role, query);
            };
            frame.push_back(std::move(p));
        }
    }
    return frame;
}

ClassSpec& SpecSuite::add(ClassSpec spec) {
    if (bound_) throw SpecDefinitionError("cannot add classes to a bound suite");
    auto name = spec.name;
    auto [it, inserted] = classes_.emplace(name, std::make_unique<ClassSpec>(std::move(spec)));
    if (!inserted) throw SpecDefinitionError("duplicate class " + name);
    return *it->second;
}

void SpecSuite::bind() {
    for (auto& [name, cls] : classes_) {
        std::set<std::string> seen;
        for (const auto& q : cls->model) {
            if (!seen.insert(q.name).second) throw SpecDefinitionError(name + ": duplicate model query " + q.name);
        }
        for (const auto& inv : cls->invariants) {
            for (const auto& d : inv.depend) {
                if (!cls->attributes.contains(d)) {
                    throw SpecDefinitionError(name + ": invariant '" + inv.name + "' depends on unknown attribute " + d);
                }
            }
        }
        for (auto& r : cls->routines) {
            std::vector<const ClassSpec*> arg_classes;
            for (const auto& p : r.params) {
                if (p.kind == Param::Kind::reference) {
                    const ClassSpec* c = find(p.class_name);
                    if (c == nullptr) {
                        throw SpecDefinitionError(name + "." + r.name + ": unknown argument class " + p.class_name);
                    }
                    arg_classes.push_back(c);
                } else {
                    arg_classes.push_back(nullptr);
                }
            }
            for (Role role : r.open) {
                const auto k = static_cast<std::size_t>(role.index);
                if (k < 1 || k > r.params.size() || r.params[k - 1].kind != Param::Kind::reference) {
                    throw SpecDefinitionError(name + "." + r.name + ": open clause must name a reference argument");
                }
            }
            for (const auto& pre : r.preconditions) {
                if (!pre) throw SpecDefinitionError(name + "." + r.name + ": null precondition");
            }
            r.frame = derive_frame_postconditions(r, *cls, arg_classes);
        }
    }
    bound_ = true;
}

const ClassSpec& SpecSuite::at(std::string_view name) const {
    const ClassSpec* c = find(name);
    if (c == nullptr) throw ConfigError("unknown class " + std::string(name));
    return *c;
}

const ClassSpec* SpecSuite::find(std::string_view name) const {
    auto it = classes_.find(name);
    return it == classes_.end() ? nullptr : it->second.get();
}

std::vector<std::string> SpecSuite::class_names() const {
    std::vector<std::string> names;
    for (const auto& [name, _] : classes_) names.push_back(name);
    return names;
}

// ---------------------------------------------------------------------------
// Views

namespace {

std::vector<ObjectId> role_ids(const Object& target, std::span<const ModelValue> args) {
    std::vector<ObjectId> ids{target.id()};
    for (const auto& a : args) ids.push_back(a.is_object() ? a.as_object() : void_id);
    return ids;
}

ObjectId lookup_role(const std::vector<ObjectId>& ids, Role role) {
    const auto k = static_cast<std::size_t>(role.index);
    if (k >= ids.size()) throw ModelError("role " + std::to_string(role.index) + " does not exist");
    return ids[k];
}

class LiveView final : public StateView {
public:
    LiveView(const Engine& engine, std::vector<ObjectId> ids) : engine_(engine), ids_(std::move(ids)) {}

    ObjectId id(Role role) const override { return lookup_role(ids_, role); }

    ModelValue query(Role role, std::string_view q) const override {
        const ObjectId oid = id(role);
        if (oid.is_void()) throw ModelError("model query '" + std::string(q) + "' on Void");
        const Object* obj = engine_.find(oid);
        if (obj == nullptr) throw ModelError("dangling reference");
        return engine_.evaluate(*obj, q);
    }

private:
    const Engine& engine_;
    std::vector<ObjectId> ids_;
};

class SnapshotView final : public StateView {
public:
    SnapshotView(const ModelSnapshot& snap, const std::vector<ObjectId>& ids) : snap_(snap), ids_(ids) {}

    ObjectId id(Role role) const override { return lookup_role(ids_, role); }

    ModelValue query(Role role, std::string_view q) const override {
        const ObjectId oid = id(role);
        if (oid.is_void()) throw ModelError("model query '" + std::string(q) + "' on Void");
        const ModelValue* v = snap_.find(oid, q);
        if (v == nullptr) throw ModelError("model query '" + std::string(q) + "' is not in the frame universe");
        return *v;
    }

private:
    const ModelSnapshot& snap_;
    const std::vector<ObjectId>& ids_;
};

/// Saves and sets is_open on a set of objects; restores on destruction.
class OpenScope {
public:
    void open(Object& obj) {
        for (const auto& s : saved_) {
            if (s.first == &obj) return;
        }
        saved_.emplace_back(&obj, obj.is_open());
        obj.set_open(true);
    }
    void restore() {
        for (auto it = saved_.rbegin(); it != saved_.rend(); ++it) it->first->set_open(it->second);
        restored_ = true;
    }
    ~OpenScope() {
        if (!restored_) restore();
    }
    const std::vector<std::pair<Object*, bool>>& saved() const { return saved_; }

private:
    std::vector<std::pair<Object*, bool>> saved_;
    bool restored_ = false;
};

} // namespace

const ModelValue* ModelSnapshot::find(ObjectId id, std::string_view query) const {
    auto it = entries.find(std::pair<ObjectId, std::string>(id, std::string(query)));
    return it == entries.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Engine

void Engine::adopt(std::unique_ptr<Object> obj) {
    obj->id_ = ObjectId{next_token_++};
    objects_.push_back(std::move(obj));
}

Object* Engine::find(ObjectId id) const {
    if (id.is_void() || id.token > objects_.size()) return nullptr;
    return objects_[id.token - 1].get();
}

ModelValue Engine::evaluate(const Object& obj, std::string_view query) const {
    const ModelQuery* q = obj.spec().query(query);
    if (q == nullptr) throw ModelError(obj.class_name() + " has no model query '" + std::string(query) + "'");
    return guard_model_evaluation([&] { return q->evaluate(obj); });
}

ModelSnapshot Engine::snapshot_frame_universe(const Object& target, std::span<const ModelValue> args,
                                              std::string_view routine) const {
    ModelSnapshot snap;
    snap.routine = std::string(routine);
    snap.call_ordinal = ordinal_;
    auto capture = [&](const Object& obj) {
        for (const auto& q : obj.spec().model) {
            auto key = std::pair<ObjectId, std::string>(obj.id(), q.name);
            if (snap.entries.contains(key)) continue;
            snap.entries.emplace(std::move(key), evaluate(obj, q.name));
        }
    };
    capture(target);
    for (const auto& a : args) {
        if (!a.is_object() || a.is_void()) continue;
        const Object* obj = find(a.as_object());
        if (obj == nullptr) throw ModelError("dangling reference argument");
        capture(*obj);
    }
    return snap;
}

bool Engine::invariant_clause_eligible(const InvariantClause& clause, const Object& target) const {
    if (target.is_open()) return false;
    for (const auto& attr : clause.depend) {
        auto it = target.spec().attributes.find(attr);
        if (it == target.spec().attributes.end()) return false;
        const Object* attached = it->second(target);
        if (attached != nullptr && attached->is_open()) return false;
    }
    return true;
}

void Engine::emit(CheckEvent::Kind kind, ObjectId obj, std::string_view routine, std::string_view clause,
                  std::uint64_t ordinal) const {
    if (observer_) observer_(CheckEvent{kind, obj, std::string(routine), std::string(clause), ordinal});
}

void Engine::record(Violation v) {
    v.depth = std::max(depth_ - 1, 0);
    pending_.push_back(std::move(v));
}

bool Engine::check_invariants(const Object& obj, ViolationKind kind, std::string_view routine,
                              std::uint64_t ordinal) {
    bool ok = true;
    const auto event = kind == ViolationKind::invariant_entry ? CheckEvent::Kind::entry_invariant
                                                              : CheckEvent::Kind::exit_invariant;
    for (const auto& clause : obj.spec().invariants) {
        if (!invariant_clause_eligible(clause, obj)) continue;
        emit(event, obj.id(), routine, clause.name, ordinal);
        Violation v{kind, obj.class_name(), std::string(routine), clause.name, Blame::callee, ordinal, 0, obj.id(), {}};
        try {
            SuppressGuard guard(*this);
            if (!clause.holds(InvariantContext(*this, obj))) {
                ok = false;
                record(std::move(v));
            }
        } catch (const std::exception& e) {
            ok = false;
            v.kind = ViolationKind::model_eval_error;
            v.detail = e.what();
            record(std::move(v));
        }
    }
    return ok;
}

std::optional<ModelValue> CallContext::call(Object& target, std::string_view routine, std::vector<ModelValue> args) {
    return engine_.checked(target, routine, std::move(args));
}

std::optional<ModelValue> Engine::checked(Object& target, std::string_view routine, std::vector<ModelValue> args) {
    if (checking_suppressed()) {
        CallContext ctx(*this);
        return target.invoke(ctx, routine, args);
    }
    const RoutineSpec* rs = target.spec().routine(routine);
    if (rs == nullptr) {
        throw SpecDefinitionError(target.class_name() + " has no routine '" + std::string(routine) + "'");
    }
    if (args.size() != rs->params.size()) {
        throw SpecDefinitionError(target.class_name() + "." + rs->name + ": expected " +
                                  std::to_string(rs->params.size()) + " arguments, got " + std::to_string(args.size()));
    }

    struct DepthScope {
        explicit DepthScope(int& d) : depth(d) { ++depth; }
        ~DepthScope() { --depth; }
        int& depth;
    } depth_scope(depth_);

    const std::uint64_t ordinal = ++ordinal_;
    const std::string& cls = target.class_name();
    auto violation = [&](ViolationKind kind, std::string clause, Blame blame, std::string detail = {}) {
        record(Violation{kind, cls, rs->name, std::move(clause), blame, ordinal, 0, target.id(), std::move(detail)});
    };

    // (1) entry invariant
    if (!target.is_open() && !check_invariants(target, ViolationKind::invariant_entry, rs->name, ordinal)) {
        throw ContractFailure{};
    }

    // (2) preconditions
    const auto ids = role_ids(target, args);
    {
        LiveView live(*this, ids);
        PredicateEnv env(nullptr, live, args, nullptr);
        for (const auto& pre : rs->preconditions) {
            emit(CheckEvent::Kind::precondition, target.id(), rs->name, pre->name, ordinal);
            bool ok = false;
            try {
                SuppressGuard guard(*this);
                ok = pre->holds(env);
            } catch (const std::exception& e) {
                violation(ViolationKind::model_eval_error, pre->name, Blame::callee, e.what());
                throw ContractFailure{};
            }
            if (!ok) {
                violation(ViolationKind::precondition, pre->name, Blame::caller);
                throw ContractFailure{};
            }
        }
    }

    // (3) snapshot of the frame universe
    const bool needs_states = !rs->postconditions.empty() || !rs->frame.empty();
    ModelSnapshot before;
    if (needs_states) {
        emit(CheckEvent::Kind::snapshot, target.id(), rs->name, {}, ordinal);
        try {
            before = snapshot_frame_universe(target, args, rs->name);
        } catch (const std::exception& e) {
            violation(ViolationKind::model_eval_error, "old", Blame::callee, e.what());
            throw ContractFailure{};
        }
    }

    // (4) open target and open-listed arguments
    OpenScope scope;
    scope.open(target);
    for (Role role : rs->open) {
        const ObjectId oid = ids[static_cast<std::size_t>(role.index)];
        if (Object* obj = find(oid)) scope.open(*obj);
    }

    // (5) body
    emit(CheckEvent::Kind::body, target.id(), rs->name, {}, ordinal);
    std::optional<ModelValue> result;
    {
        CallContext ctx(*this);
        result = target.invoke(ctx, rs->name, args);
    }

    // (6) restore
    std::vector<Object*> opened;
    for (const auto& s : scope.saved()) opened.push_back(s.first);
    scope.restore();

    // (7) exit invariants
    bool inv_ok = true;
    for (Object* obj : opened) {
        if (obj->is_open()) continue;
        inv_ok = check_invariants(*obj, ViolationKind::invariant_exit, rs->name, ordinal) && inv_ok;
    }
    if (!inv_ok) throw ContractFailure{};

    // (8) postconditions, (9) frame
    if (needs_states) {
        ModelSnapshot after;
        try {
            after = snapshot_frame_universe(target, args, rs->name);
        } catch (const std::exception& e) {
            violation(ViolationKind::model_eval_error, "post-state", Blame::callee, e.what());
            throw ContractFailure{};
        }
        SnapshotView old_view(before, ids);
        SnapshotView now_view(after, ids);
        PredicateEnv env(&old_view, now_view, args, &result);
        bool ok = true;
        auto run = [&](const Postcondition& post, CheckEvent::Kind event, ViolationKind kind) {
            emit(event, target.id(), rs->name, post.name, ordinal);
            try {
                SuppressGuard guard(*this);
                if (!post.holds(env)) {
                    ok = false;
                    violation(kind, post.name, Blame::callee);
                }
            } catch (const std::exception& e) {
                ok = false;
                violation(ViolationKind::model_eval_error, post.name, Blame::callee, e.what());
            }
        };
        for (const auto& post : rs->postconditions) {
            run(post, CheckEvent::Kind::postcondition, ViolationKind::postcondition);
        }
        for (const auto& post : rs->frame) run(post, CheckEvent::Kind::frame, ViolationKind::frame);
        if (!ok) throw ContractFailure{};
    }
    return result;
}

CallOutcome Engine::top_level(Object& target, std::string_view routine, std::vector<ModelValue>&& args,
                              bool creation) {
    CallOutcome out;
    if (checking_suppressed()) {
        if (!creation) {
            CallContext ctx(*this);
            out.result = target.invoke(ctx, routine, args);
        }
        return out;
    }
    if (depth_ != 0) throw std::logic_error("Engine::call from inside a body; use CallContext::call");
    pending_.clear();
    top_ordinal_ = ordinal_ + 1;
    try {
        if (creation) {
            const auto ordinal = ++ordinal_;
            if (!target.is_open()) check_invariants(target, ViolationKind::invariant_exit, routine, ordinal);
        } else {
            out.result = checked(target, routine, std::move(args));
        }
    } catch (const ContractFailure&) {
    } catch (const SpecDefinitionError&) {
        throw;
    } catch (const std::exception& e) {
        Violation v{ViolationKind::model_eval_error, target.class_name(), std::string(routine), "crash",
                    Blame::callee, top_ordinal_, 0, target.id(), e.what()};
        pending_.push_back(std::move(v));
    }
    out.violations = std::move(pending_);
    pending_.clear();
    if (!out.violations.empty()) {
        out.result.reset();
        const auto& first = out.violations.front();
        out.invalid = harness_mode_ && first.kind == ViolationKind::precondition && first.depth == 0;
    }
    return out;
}

CallOutcome Engine::call(Object& target, std::string_view routine, std::vector<ModelValue> args) {
    return top_level(target, routine, std::move(args), false);
}

CallOutcome Engine::check_creation(Object& target, std::string_view creator) {
    return top_level(target, creator, {}, true);
}

} // namespace mbc
