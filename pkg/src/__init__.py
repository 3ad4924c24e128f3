# Edge Colouring Lab
