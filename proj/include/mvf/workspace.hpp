#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mvf/classifier.hpp"
#include "mvf/formula.hpp"

namespace mvf {

/**
 * Configuration-driven workspace: named groups, group theories, fields,
 * automorphisms, formulas and witness strategies parsed from
 * line-oriented `kind name = expression` files. Names are unique per
 * kind; forward references are rejected (files are read top to bottom).
 */
class Workspace {
public:
    struct FieldEntry {
        MVFDescriptor descriptor;
        std::string group_name;  // the concrete group, when one backs this field
        bool roots = false;
        bool concrete = false;
    };

    struct TwistSpec {
        std::vector<std::pair<Value, Rat>> generator_values;
    };
    struct GaussSpec {
        std::string base_auto;  // name of an identity/twist entry
        std::string a_literal;  // series literal, parsed against the field at use
    };
    using AutoEntry = std::variant<IdentityAuto, TwistSpec, GaussSpec>;

    struct WitnessEntry {
        bool is_grid = false;
        long depth = 0, height = 0;
        std::vector<std::string> point_literals;  // non-grid: parsed at use
    };

    static Workspace load(const std::vector<std::string>& paths);
    static Workspace from_text(const std::string& text);

    void add_line(const std::string& line);

    const ConcreteGroup& group(const std::string& name) const;
    const GroupTheory& group_theory(const std::string& name) const;
    // accepts either a concrete group name (classified) or a theory name
    GroupTheory resolve_group_theory(const std::string& name) const;
    const FieldEntry& field(const std::string& name) const;
    const AutoEntry& automorphism(const std::string& name) const;
    const Formula& formula(const std::string& name) const;
    const WitnessEntry& witness(const std::string& name) const;

    FieldPtr concrete_field(const std::string& field_name) const;
    FieldAuto bind_field_auto(const std::string& auto_name, const FieldPtr& field) const;

    // a concrete difference structure for eval/hensel/check commands
    using AnyStructure = std::variant<HahnDiff, GaussDiff>;
    AnyStructure make_structure(const std::string& field_name, const std::string& auto_name) const;

    FieldTheory parse_field_theory(std::string_view text) const;

    const std::map<std::string, ConcreteGroup>& groups() const { return groups_; }
    const std::map<std::string, FieldEntry>& fields() const { return fields_; }
    const std::map<std::string, Formula>& formulas() const { return formulas_; }

private:
    std::map<std::string, ConcreteGroup> groups_;
    std::map<std::string, GroupTheory> group_theories_;
    std::map<std::string, FieldEntry> fields_;
    std::map<std::string, AutoEntry> autos_;
    std::map<std::string, Formula> formulas_;
    std::map<std::string, WitnessEntry> witnesses_;

    void add_group(const std::string& name, std::string_view expr);
    void add_group_theory(const std::string& name, std::string_view expr);
    void add_field(const std::string& name, std::string_view expr);
    void add_auto(const std::string& name, std::string_view expr);
    void add_formula(const std::string& name, std::string_view expr);
    void add_witness(const std::string& name, std::string_view expr);
};

}  // namespace mvf
