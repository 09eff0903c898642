namespace quatsurf {}
