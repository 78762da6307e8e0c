#pragma once

#include "json_util.hpp"
#include "mazo/axes.hpp"
#include "mazo/content.hpp"

namespace mazo::detail {

inline constexpr EnumTable<Axis, 3> kAxisNames{{{
    {Axis::Focus, "Focus"}, {Axis::Rhythm, "Rhythm"}, {Axis::Momentum, "Momentum"}}}};

inline constexpr EnumTable<EffectOp, 8> kEffectOpNames{{{
    {EffectOp::Damage, "Damage"}, {EffectOp::Shield, "Shield"}, {EffectOp::AxisDelta, "AxisDelta"},
    {EffectOp::GainEnergy, "GainEnergy"}, {EffectOp::Draw, "Draw"}, {EffectOp::Heal, "Heal"},
    {EffectOp::GainCredits, "GainCredits"}, {EffectOp::RemoveShield, "RemoveShield"}}}};

inline constexpr EnumTable<Target, 5> kTargetNames{{{
    {Target::Self, "Self"}, {Target::SingleEnemy, "SingleEnemy"}, {Target::AllEnemies, "AllEnemies"},
    {Target::SingleHero, "SingleHero"}, {Target::Party, "Party"}}}};

inline constexpr EnumTable<CardKind, 3> kCardKindNames{{{
    {CardKind::Attack, "Attack"}, {CardKind::Skill, "Skill"}, {CardKind::Power, "Power"}}}};

inline constexpr EnumTable<IntentKind, 4> kIntentKindNames{{{
    {IntentKind::Attack, "Attack"}, {IntentKind::Shield, "Shield"},
    {IntentKind::AxisDelta, "AxisDelta"}, {IntentKind::Multi, "Multi"}}}};

inline constexpr EnumTable<Tier, 3> kTierNames{{{
    {Tier::Normal, "Normal"}, {Tier::Elite, "Elite"}, {Tier::Boss, "Boss"}}}};

inline constexpr EnumTable<ModuleHook, 4> kModuleHookNames{{{
    {ModuleHook::CombatStart, "CombatStart"}, {ModuleHook::TurnStart, "TurnStart"},
    {ModuleHook::CardPlayed, "CardPlayed"}, {ModuleHook::DamageTaken, "DamageTaken"}}}};

}  // namespace mazo::detail
