namespace rspide {}
