#pragma once

// Runtime contract engine: specification data model, the checked-call
// protocol, invariant gating with open/depend, and derived frame checks.

#include "mbc/model.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mbc {

class Engine;
class Object;
struct ClassSpec;

/// Raised when a specification is malformed (unknown query in a modify
/// clause, bad depend attribute, ...). Detected at binding time.
class SpecDefinitionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised for invalid tool or session configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SpecLevel { weak, strong };

std::string to_string(SpecLevel level);
SpecLevel parse_spec_level(std::string_view text);

/// Which object of a call a clause talks about: the target, or argument k
/// (1-based).
struct Role {
    int index = 0;

    static constexpr Role target() { return Role{0}; }
    static constexpr Role arg(int k) { return Role{k}; }
    constexpr bool is_target() const { return index == 0; }
    friend constexpr auto operator<=>(const Role&, const Role&) = default;
};

// ---------------------------------------------------------------------------
// Views over pre/post states

/// Read access to the model of every object in a call's frame universe.
class StateView {
public:
    virtual ~StateView() = default;
    /// Identity of the object playing `role` (void_id when Void).
    virtual ObjectId id(Role role) const = 0;
    /// Value of model query `query` of the object playing `role`.
    virtual ModelValue query(Role role, std::string_view query) const = 0;
};

/// Everything a pre- or postcondition may look at.
class PredicateEnv {
public:
    PredicateEnv(const StateView* before, const StateView& now, std::span<const ModelValue> args,
                 const std::optional<ModelValue>* result)
        : before_(before), now_(now), args_(args), result_(result) {}

    /// Current value of a model query (pre-state in preconditions, post-state
    /// in postconditions).
    ModelValue model(Role role, std::string_view query) const { return now_.query(role, query); }
    ModelValue model(std::string_view query) const { return model(Role::target(), query); }

    /// Value captured at routine entry.
    ModelValue old(Role role, std::string_view query) const;
    ModelValue old(std::string_view query) const { return old(Role::target(), query); }

    /// Argument k, 1-based. References are ModelValue objects.
    const ModelValue& arg(int k) const;
    ObjectId id(Role role) const { return now_.id(role); }
    bool is_void(Role role) const { return id(role).is_void(); }

    const ModelValue& result() const;

private:
    const StateView* before_;
    const StateView& now_;
    std::span<const ModelValue> args_;
    const std::optional<ModelValue>* result_;
};

using Predicate = std::function<bool(const PredicateEnv&)>;

// ---------------------------------------------------------------------------
// Specification data model

/// Pure function from concrete object state to an abstract model value.
struct ModelQuery {
    std::string name;
    std::function<ModelValue(const Object&)> evaluate;
};

struct Precondition {
    std::string name;
    Predicate holds;
};

struct Postcondition {
    std::string name;
    Predicate holds;
    /// Generated from a modify clause rather than written by hand.
    bool derived_frame = false;
    /// When set, the predicate reads the post-state of this role only.
    std::optional<Role> post_role;
    bool experimental = false;
};

class InvariantContext {
public:
    InvariantContext(const Engine& engine, const Object& self) : engine_(engine), self_(self) {}

    const Object& self() const { return self_; }
    template <class T>
    const T& as() const { return static_cast<const T&>(self_); }

    ModelValue query(std::string_view name) const;
    ModelValue query_of(const Object& other, std::string_view name) const;

private:
    const Engine& engine_;
    const Object& self_;
};

enum class InvariantKind { model_constraint, representation_constraint };

struct InvariantClause {
    std::string name;
    std::function<bool(const InvariantContext&)> holds;
    /// Reference attributes whose attached objects must be closed for the
    /// clause to be checked.
    std::vector<std::string> depend;
    InvariantKind kind = InvariantKind::model_constraint;
    bool experimental = false;
};

struct Param {
    enum class Kind { integer, reference };
    std::string name;
    Kind kind = Kind::integer;
    std::string class_name;  // for references
    /// An integer that is stored as a container element rather than used as
    /// a position.
    bool element = false;

    static Param integer(std::string name) { return {std::move(name), Kind::integer, {}, false}; }
    static Param element_value(std::string name) { return {std::move(name), Kind::integer, {}, true}; }
    static Param reference(std::string name, std::string cls) {
        return {std::move(name), Kind::reference, std::move(cls), false};
    }
};

enum class ResultKind { none, boolean, integer, reference };

struct ModifyEntry {
    Role role;
    std::string query;
};

using PreconditionPtr = std::shared_ptr<const Precondition>;

struct RoutineSpec {
    std::string name;
    std::vector<Param> params;
    ResultKind result = ResultKind::none;
    /// Exported routines are available to clients and the test generator;
    /// the rest are only reachable through qualified calls from bodies.
    bool exported = true;
    std::vector<PreconditionPtr> preconditions;
    std::vector<Postcondition> postconditions;
    /// nullopt: no frame clause at all. Empty vector: nothing may change.
    std::optional<std::vector<ModifyEntry>> modify;
    /// Argument roles opened for the duration of the call.
    std::vector<Role> open;
    /// Filled in by SpecSuite::bind from `modify`.
    std::vector<Postcondition> frame;

    std::string role_name(Role role) const;
};

using AttributeProbe = std::function<const Object*(const Object&)>;

struct ClassSpec {
    std::string name;
    SpecLevel level = SpecLevel::strong;
    std::vector<ModelQuery> model;
    std::vector<InvariantClause> invariants;
    std::map<std::string, AttributeProbe, std::less<>> attributes;
    std::vector<RoutineSpec> routines;
    /// Routines whose precondition differs between weak and strong levels.
    std::vector<std::string> strengthened_preconditions;

    const RoutineSpec* routine(std::string_view name) const;
    RoutineSpec* routine(std::string_view name);
    const ModelQuery* query(std::string_view name) const;
};

/// One predicate per frame-universe query not listed in `modify`, each
/// stating that the query keeps its entry value. Empty when the routine has
/// no frame clause.
std::vector<Postcondition> derive_frame_postconditions(const RoutineSpec& routine, const ClassSpec& cls,
                                                       std::span<const ClassSpec* const> arg_classes);

/// A set of class specifications at one level. `bind` validates them and
/// attaches derived frame postconditions.
class SpecSuite {
public:
    ClassSpec& add(ClassSpec spec);
    void bind();

    const ClassSpec& at(std::string_view name) const;
    const ClassSpec* find(std::string_view name) const;
    std::vector<std::string> class_names() const;

private:
    std::map<std::string, std::unique_ptr<ClassSpec>, std::less<>> classes_;
    bool bound_ = false;
};

// ---------------------------------------------------------------------------
// Runtime

class CallContext;

/// Base of every object managed by the engine. Concrete state lives in the
/// subclass.
class Object {
public:
    explicit Object(const ClassSpec& spec) : spec_(&spec) {}
    virtual ~Object() = default;
    Object(const Object&) = delete;
    Object& operator=(const Object&) = delete;

    ObjectId id() const noexcept { return id_; }
    bool is_open() const noexcept { return open_; }
    void set_open(bool open) noexcept { open_ = open; }
    const ClassSpec& spec() const noexcept { return *spec_; }
    const std::string& class_name() const noexcept { return spec_->name; }

    /// Runs the body of `routine` without any checking.
    virtual std::optional<ModelValue> invoke(CallContext& ctx, std::string_view routine,
                                             std::span<const ModelValue> args) = 0;

private:
    friend class Engine;
    const ClassSpec* spec_;
    ObjectId id_{};
    bool open_ = false;
};

enum class ViolationKind { precondition, invariant_entry, invariant_exit, postcondition, frame, model_eval_error };
enum class Blame { caller, callee };

std::string to_string(ViolationKind kind);
std::string to_string(Blame blame);

struct Violation {
    ViolationKind kind;
    std::string class_name;
    std::string routine;
    std::string clause;
    Blame blame = Blame::callee;
    std::uint64_t call_ordinal = 0;
    int depth = 0;
    ObjectId object;
    std::string detail;
};

struct CallOutcome {
    std::optional<ModelValue> result;
    std::vector<Violation> violations;
    /// The top-level call failed its precondition (harness mode only).
    bool invalid = false;
    bool ok() const { return violations.empty(); }
};

/// Frozen model values of a call's frame universe.
struct ModelSnapshot {
    std::map<std::pair<ObjectId, std::string>, ModelValue, std::less<>> entries;
    std::string routine;
    std::uint64_t call_ordinal = 0;

    const ModelValue* find(ObjectId id, std::string_view query) const;
};

/// Check events in the order the protocol emits them.
struct CheckEvent {
    enum class Kind { entry_invariant, precondition, snapshot, body, exit_invariant, postcondition, frame };
    Kind kind;
    ObjectId object;
    std::string routine;
    std::string clause;
    std::uint64_t call_ordinal = 0;
};

/// What a body sees: the engine for qualified calls on other objects.
class CallContext {
public:
    explicit CallContext(Engine& engine) : engine_(engine) {}

    /// Qualified call; contract checks apply. A violation unwinds the whole
    /// enclosing top-level call.
    std::optional<ModelValue> call(Object& target, std::string_view routine, std::vector<ModelValue> args = {});
    Engine& engine() { return engine_; }

private:
    Engine& engine_;
};

class Engine {
public:
    Engine() = default;
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    /// Creates an object owned by the engine. Ids are never reused.
    template <class T, class... Args>
    T& create(Args&&... args) {
        auto obj = std::make_unique<T>(std::forward<Args>(args)...);
        T& ref = *obj;
        adopt(std::move(obj));
        return ref;
    }
    Object* find(ObjectId id) const;
    std::size_t object_count() const { return objects_.size(); }

    /// Checked call from the outside world (depth 0).
    CallOutcome call(Object& target, std::string_view routine, std::vector<ModelValue> args = {});
    /// Invariant check after a creation procedure.
    CallOutcome check_creation(Object& target, std::string_view creator = "make");

    /// Evaluates model query `query` on `obj` with checking suppressed.
    ModelValue evaluate(const Object& obj, std::string_view query) const;

    template <class Thunk>
    ModelValue guard_model_evaluation(Thunk&& thunk) const {
        SuppressGuard guard(*this);
        try {
            return thunk();
        } catch (const ModelError&) {
            throw;
        } catch (const std::exception& e) {
            throw ModelError(std::string("model evaluation failed: ") + e.what());
        }
    }
    bool checking_suppressed() const { return suppress_depth_ > 0; }

    ModelSnapshot snapshot_frame_universe(const Object& target, std::span<const ModelValue> args,
                                          std::string_view routine = {}) const;
    bool invariant_clause_eligible(const InvariantClause& clause, const Object& target) const;

    /// Precondition violations at depth 0 mark the call invalid instead of
    /// being treated as a fault.
    void set_harness_mode(bool on) { harness_mode_ = on; }
    void set_observer(std::function<void(const CheckEvent&)> observer) { observer_ = std::move(observer); }

    /// Ordinal of the current top-level call (0 outside calls).
    std::uint64_t top_level_ordinal() const { return top_ordinal_; }
    std::uint64_t call_count() const { return ordinal_; }
    int depth() const { return depth_; }

private:
    friend class CallContext;

    struct SuppressGuard {
        explicit SuppressGuard(const Engine& e) : engine(e) { ++engine.suppress_depth_; }
        ~SuppressGuard() { --engine.suppress_depth_; }
        const Engine& engine;
    };
    struct ContractFailure {};

    void adopt(std::unique_ptr<Object> obj);
    std::optional<ModelValue> checked(Object& target, std::string_view routine, std::vector<ModelValue> args);
    CallOutcome top_level(Object& target, std::string_view routine, std::vector<ModelValue>&& args, bool creation);
    bool check_invariants(const Object& obj, ViolationKind kind, std::string_view routine, std::uint64_t ordinal);
    void record(Violation v);
    void emit(CheckEvent::Kind kind, ObjectId obj, std::string_view routine, std::string_view clause,
              std::uint64_t ordinal) const;

    std::vector<std::unique_ptr<Object>> objects_;
    std::uint64_t next_token_ = 1;
    std::uint64_t ordinal_ = 0;
    std::uint64_t top_ordinal_ = 0;
    int depth_ = 0;
    mutable int suppress_depth_ = 0;
    bool harness_mode_ = false;
    std::vector<Violation> pending_;
    std::function<void(const CheckEvent&)> observer_;
};

} // namespace mbc
