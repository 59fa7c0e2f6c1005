#include "afembed/gaussian.hpp"

namespace afembed {
namespace {

std::string imaginary_part(const Rational& im) {
  if (im == 1) return "i";
  if (im == -1) return "-i";
  return im.str() + "i";
}

}  // namespace

std::string GaussianRational::to_string() const {
  if (im_ == 0) return re_.str();
  if (re_ == 0) return imaginary_part(im_);
  std::string out = re_.str();
  out += im_ > 0 ? "+" : "-";
  Rational mag = im_ > 0 ? im_ : Rational(-im_);
  out += mag == 1 ? std::string("i") : mag.str() + "i";
  return out;
}

}  // namespace afembed
