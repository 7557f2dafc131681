#pragma once

#include <string>
#include <vector>

#include "nhqfi/config.hpp"
#include "nhqfi/table.hpp"

namespace nhqfi::figures {

struct Panel {
    std::string name;
    table::Table data;
    bool heatmap = false;
    table::PlotSpec plot;           // line panels
    std::string row, col, value;    // heatmap panels
};

struct Figure {
    std::string name;
    std::vector<Panel> panels;
};

// fig1: skin-effect and EP QFI curves against N with the SQL line.
// fig2: closed-form multiparameter QFI matrix, inverse and sensitivities.
// figS1: skin-mode profiles, overlaps, localization length, QFI suppression.
// figS2: threshold expansion and enhancement factors.
// figS3: regime classification over (N, x) with the threshold boundary.
// figS4: cross-checks between independent numerical routes.
// Every figure is a pure function of its config: identical config gives
// byte-identical CSV.
Figure fig1(const KeyValues& cfg);
Figure fig2(const KeyValues& cfg);
Figure figS1(const KeyValues& cfg);
Figure figS2(const KeyValues& cfg);
Figure figS3(const KeyValues& cfg);
Figure figS4(const KeyValues& cfg);

const std::vector<std::string>& names();
Figure make(const std::string& name, const KeyValues& cfg);

// Renders a panel from its CSV text only.
std::string render_svg(const Panel& p, const std::string& csv);

// Values below this are written as the floor with floored = 1.
constexpr double log_floor = -100;

}  // namespace nhqfi::figures
