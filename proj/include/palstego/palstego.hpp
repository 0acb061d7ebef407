#pragma once

// Palette-order steganography: Lehmer-code embedding into indexed images with
// blind extraction.

#include "palstego/codecs/codecs.hpp"
#include "palstego/errors.hpp"
#include "palstego/factoradic.hpp"
#include "palstego/lehmer.hpp"
#include "palstego/natural.hpp"
#include "palstego/otp.hpp"
#include "palstego/palette_image.hpp"
#include "palstego/stego.hpp"
