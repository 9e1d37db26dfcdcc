//! The worked 8x8 example block and its printed transformations.

#[rustfmt::skip]
pub const TABLE_2: [u8; 64] = [
    221, 232, 231, 242, 246, 247, 251, 250,
    220, 227, 231, 236, 242, 241, 250, 251,
    221, 215, 221, 232, 240, 247, 251, 251,
    217, 216, 216, 225, 237, 241, 245, 247,
    216, 221, 217, 222, 231, 235, 242, 247,
    220, 216, 222, 215, 227, 231, 242, 247,
    216, 216, 211, 216, 222, 227, 237, 247,
    217, 216, 211, 216, 217, 222, 237, 235,
];

#[rustfmt::skip]
pub const TABLE_3: [u8; 64] = [
    220, 230, 230, 240, 245, 245, 250, 250,
    220, 225, 230, 235, 240, 245, 250, 250,
    220, 215, 220, 230, 240, 245, 250, 250,
    215, 215, 215, 225, 235, 240, 245, 245,
    215, 220, 215, 220, 230, 235, 240, 245,
    220, 215, 220, 215, 225, 230, 240, 245,
    215, 215, 210, 215, 220, 225, 235, 245,
    215, 215, 210, 215, 215, 220, 235, 235,
];

#[rustfmt::skip]
pub const TABLE_4: [u8; 64] = [
    44, 46, 46, 48, 49, 49, 50, 50,
    44, 45, 46, 47, 48, 49, 50, 50,
    44, 43, 44, 46, 48, 49, 50, 50,
    43, 43, 43, 45, 47, 48, 49, 49,
    43, 44, 43, 44, 46, 47, 48, 49,
    44, 43, 44, 43, 45, 46, 48, 49,
    43, 43, 42, 43, 44, 45, 47, 49,
    43, 43, 42, 43, 43, 44, 47, 47,
];

#[rustfmt::skip]
pub const TABLE_5: [u8; 64] = [
    2, 4, 4, 6, 7, 7, 8, 8,
    2, 3, 4, 5, 6, 7, 8, 8,
    2, 1, 2, 4, 6, 7, 8, 8,
    1, 1, 1, 3, 5, 6, 7, 7,
    1, 2, 1, 2, 4, 5, 6, 7,
    2, 1, 2, 1, 3, 4, 6, 7,
    1, 1, 0, 1, 2, 3, 5, 7,
    1, 1, 0, 1, 1, 2, 5, 5,
];
