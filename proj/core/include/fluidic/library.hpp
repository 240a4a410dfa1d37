#pragma once

#include <string_view>

#include "fluidic/netlist.hpp"

namespace fluidic::lib {

inline constexpr std::string_view kNot = "NOT";
inline constexpr std::string_view kNand2 = "NAND_2";
inline constexpr std::string_view kNand3 = "NAND_3";
inline constexpr std::string_view kSrLatch = "SR_LATCH";
inline constexpr std::string_view kTffStruct = "TFF_STRUCT";
inline constexpr std::string_view kTffBehav = "TFF_BEHAV";
inline constexpr std::string_view kJkffBehav = "JKFF_BEHAV";

/// NAND_n exists for n in [2, kMaxNandArity]; the hardware standard cells are
/// NAND_2 and NAND_3, wider stacks serve synthesis with a raised fan-in cap.
inline constexpr int kMaxNandArity = 8;

/// Arity of a NAND_n cell id, 0 if `id` is not one.
int nand_arity(std::string_view id);

/// Pull restriction emitted for every NOT/NAND output, Pa·s/m³.
double default_pull_resistance();

bool is_library_cell(std::string_view id);
/// TFF_BEHAV / JKFF_BEHAV: atomic at gate level, not expandable to valves.
bool is_behavioral(std::string_view id);
/// NOT / NAND_2 / NAND_3: the leaf gates of gate-level netlists.
bool is_gate(std::string_view id);

/// Fixed switch cost of a structural library cell after valve-level
/// expansion (NOT=1, NAND_n=n, SR_LATCH=4, TFF_STRUCT=10). -1 for behavioral.
int valve_cost(std::string_view id);

/// Cell definition, or nullptr if `id` is not a library cell. Behavioral
/// cells have ports but no components. `swap_feedback` selects the alternate
/// TFF_STRUCT excitation wiring and is ignored for every other cell.
const Cell* cell(std::string_view id, bool swap_feedback = false);

} // namespace fluidic::lib
