#pragma once

#include <string>

namespace mbt {

// A user event applied to the VM at the start of a step.
struct InputAction {
    enum class Kind { KeyDown, KeyUp, KeyPressForSteps, MouseMove, MouseClick, ReleaseAll };

    Kind kind = Kind::ReleaseAll;
    std::string key;  // normalized key name
    int steps = 0;    // KeyPressForSteps
    double x = 0;     // mouse actions
    double y = 0;

    static InputAction key_down(std::string key);
    static InputAction key_up(std::string key);
    static InputAction key_press_for(std::string key, int steps);
    static InputAction mouse_move(double x, double y);
    static InputAction mouse_click(double x, double y);
    static InputAction release_all();

    bool is_key_press() const { return kind == Kind::KeyDown || kind == Kind::KeyPressForSteps; }
    bool operator==(const InputAction&) const = default;
};

const char* input_kind_name(InputAction::Kind kind);
std::string describe(const InputAction& action);

}  // namespace mbt
