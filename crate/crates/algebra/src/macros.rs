/// Implements the owned/borrowed combinations of a binary operator in terms
/// of the `&T op &T` implementation.
macro_rules! forward_binop {
    ($t:ty, $trait:ident, $method:ident) => {
        impl std::ops::$trait<$t> for $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl<'a> std::ops::$trait<&'a $t> for $t {
            type Output = $t;
            fn $method(self, rhs: &'a $t) -> $t {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl<'a> std::ops::$trait<$t> for &'a $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}
