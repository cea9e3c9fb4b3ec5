#include "mbc/containers/binary_tree.hpp"

#include "class_specs.hpp"
#include "spec_helpers.hpp"

namespace mbc::containers {

MSet BinaryNode::ancestors() const {
    MSet out;
    for (const BinaryNode* p = parent_; p != nullptr; p = p->parent_) {
        const ModelValue id(p->id());
        if (out.has(id)) break;
        out = out.extended(id);
    }
    return out;
}

BinaryNode* BinaryNode::node_arg(CallContext& ctx, const ModelValue& v) const {
    if (v.is_void()) return nullptr;
    auto* n = dynamic_cast<BinaryNode*>(ctx.engine().find(v.as_object()));
    if (n == nullptr) throw std::invalid_argument("argument is not a tree node");
    return n;
}

void BinaryNode::put_child(CallContext& ctx, BinaryNode*& slot, BinaryNode* n, bool right) {
    if (n == this && !right && bug("TC-1")) {
        fire("TC-1");
        return;
    }
    BinaryNode* old = slot;
    if (old != nullptr) ctx.call(*old, "set_parent", {ModelValue::void_ref()});
    slot = n;
    if (right && old != nullptr && bug("BT-2")) {
        fire("BT-2");
        return;
    }
    ctx.call(*n, "set_parent", {ModelValue::object(id())});
}

void BinaryNode::prune(CallContext& ctx, BinaryNode*& slot, bool right) {
    BinaryNode* old = slot;
    if (old == nullptr) return;
    if (!right && bug("PL-1"))
        fire("PL-1");
    else
        slot = nullptr;
    ctx.call(*old, "set_parent", {ModelValue::void_ref()});
}

std::optional<ModelValue> BinaryNode::invoke(CallContext& ctx, std::string_view r, std::span<const ModelValue> args) {
    if (r == "item") {
        return mint(item_);
    } else if (r == "replace") {
        item_ = args[0].as_integer();
    } else if (r == "put_left") {
        put_child(ctx, left_, node_arg(ctx, args[0]), false);
    } else if (r == "put_right") {
        put_child(ctx, right_, node_arg(ctx, args[0]), true);
    } else if (r == "prune_left") {
        prune(ctx, left_, false);
    } else if (r == "prune_right") {
        prune(ctx, right_, true);
    } else if (r == "child_count") {
        const std::int64_t n = (left_ ? 1 : 0) + (right_ ? 1 : 0);
        if (n == 2 && bug("BT-3")) {
            fire("BT-3");
            return mint(1);
        }
        return mint(n);
    } else if (r == "set_parent") {
        parent_ = node_arg(ctx, args[0]);
    } else {
        unknown_routine(r);
    }
    return std::nullopt;
}

namespace detail {

namespace {

const BinaryNode& as_node(const Object& o) { return static_cast<const BinaryNode&>(o); }

ObjectId id_or_void(const BinaryNode* n) { return n ? n->id() : void_id; }

ObjectId ref(const PredicateEnv& e, std::string_view q, Role r = current) { return e.model(r, q).as_object(); }

struct TreePreconditions {
    PreconditionPtr n_not_void = pre("n /= Void", [](const PredicateEnv& e) { return !e.is_void(arg1); });
    PreconditionPtr n_is_root = pre("n.parent = Void", [](const PredicateEnv& e) {
        return e.is_void(arg1) || ref(e, "parent", arg1).is_void();
    });
    PreconditionPtr no_cycle = pre("no_cycle: n /= Current and not ancestors.has (n)", [](const PredicateEnv& e) {
        return e.id(arg1) != e.id(current) && !e.model(current, "ancestors").as_set().has(ModelValue(e.id(arg1)));
    });
};

const TreePreconditions& tree_pre() {
    static const TreePreconditions p;
    return p;
}

} // namespace

ClassSpec binary_tree_spec(SpecLevel level) {
    const auto& P = tree_pre();
    const bool strong = level == SpecLevel::strong;
    ClassSpec cls;
    cls.name = "BINARY_TREE";
    cls.level = level;

    cls.model.push_back({"item", [](const Object& o) { return mint(as_node(o).item()); }});
    cls.model.push_back({"parent", [](const Object& o) { return ModelValue(id_or_void(as_node(o).parent())); }});
    cls.model.push_back({"left", [](const Object& o) { return ModelValue(id_or_void(as_node(o).left())); }});
    cls.model.push_back({"right", [](const Object& o) { return ModelValue(id_or_void(as_node(o).right())); }});
    if (strong) cls.model.push_back({"ancestors", [](const Object& o) { return ModelValue(as_node(o).ancestors()); }});

    cls.attributes["parent"] = [](const Object& o) -> const Object* { return as_node(o).parent(); };
    cls.attributes["left"] = [](const Object& o) -> const Object* { return as_node(o).left(); };
    cls.attributes["right"] = [](const Object& o) -> const Object* { return as_node(o).right(); };

    if (strong) {
        cls.invariants.push_back(invariant("parent_consistency: parent /= Void implies "
                                           "(parent.left = Current or parent.right = Current)",
                                           [](const InvariantContext& c) {
                                               const auto& n = c.as<BinaryNode>();
                                               const BinaryNode* p = n.parent();
                                               return p == nullptr || p->left() == &n || p->right() == &n;
                                           },
                                           InvariantKind::model_constraint, {"parent"}));
        cls.invariants.push_back(invariant("left_back_link: left /= Void implies left.parent = Current",
                                           [](const InvariantContext& c) {
                                               const auto& n = c.as<BinaryNode>();
                                               return n.left() == nullptr || n.left()->parent() == &n;
                                           }));
        cls.invariants.push_back(invariant("right_back_link: right /= Void implies right.parent = Current",
                                           [](const InvariantContext& c) {
                                               const auto& n = c.as<BinaryNode>();
                                               return n.right() == nullptr || n.right()->parent() == &n;
                                           }));
    }

    {
        auto r = routine("item", {}, ResultKind::integer);
        if (strong) {
            r.modify = modify({});
            r.postconditions.push_back(post("Result = item", [](const PredicateEnv& e) {
                return e.result() == e.model(current, "item");
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("replace", {Param::element_value("v")});
        if (strong) r.modify = modify({"item"});
        r.postconditions.push_back(post(strong ? "item = v" : "item_replaced: item = v", [](const PredicateEnv& e) {
            return e.model(current, "item") == e.arg(1);
        }));
        cls.routines.push_back(std::move(r));
    }
    for (const char* side : {"left", "right"}) {
        const std::string s = side;
        auto r = routine("put_" + s, {Param::reference("n", "BINARY_TREE")});
        r.preconditions = {P.n_not_void, P.n_is_root};
        if (strong) {
            r.preconditions.push_back(P.no_cycle);
            cls.strengthened_preconditions.push_back(r.name);
            r.modify = std::vector<ModifyEntry>{{current, s}, {arg1, "parent"}, {arg1, "ancestors"}};
            r.postconditions.push_back(post(s + " = n", [s](const PredicateEnv& e) { return ref(e, s) == e.id(arg1); }));
            r.postconditions.push_back(post("n.parent = Current", [](const PredicateEnv& e) {
                return ref(e, "parent", arg1) == e.id(current);
            }));
        } else {
            r.postconditions.push_back(post(s + "_child_set: " + s + " = n",
                                            [s](const PredicateEnv& e) { return ref(e, s) == e.id(arg1); }));
        }
        cls.routines.push_back(std::move(r));
    }
    for (const char* side : {"left", "right"}) {
        const std::string s = side;
        auto r = routine("prune_" + s);
        if (strong) r.modify = modify({side});
        r.postconditions.push_back(post(strong ? s + " = Void" : "no_" + s + "_child: " + s + " = Void",
                                        [s](const PredicateEnv& e) { return ref(e, s).is_void(); }));
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("child_count", {}, ResultKind::integer);
        if (strong) {
            r.modify = modify({});
            r.postconditions.push_back(post("Result = (if left = Void then 0 else 1) + (if right = Void then 0 else 1)",
                                            [](const PredicateEnv& e) {
                                                return e.result().as_integer() ==
                                                       (ref(e, "left").is_void() ? 0 : 1) +
                                                           (ref(e, "right").is_void() ? 0 : 1);
                                            }));
        } else {
            r.postconditions.push_back(post("valid_count: Result <= 2", [](const PredicateEnv& e) {
                return e.result().as_integer() <= 2;
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("set_parent", {Param::reference("p", "BINARY_TREE")});
        r.exported = false;
        if (strong) r.modify = modify({"parent", "ancestors"});
        r.postconditions.push_back(post(strong ? "parent = p" : "parent_set: parent = p", [](const PredicateEnv& e) {
            return ref(e, "parent") == e.id(arg1);
        }));
        cls.routines.push_back(std::move(r));
    }
    return cls;
}

} // namespace detail

} // namespace mbc::containers
